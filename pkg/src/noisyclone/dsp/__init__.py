"""Audio I/O, mel analysis, noise mixing, resynthesis, and objective metrics."""

from noisyclone.dsp.analysis import (
    AnalysisConfig,
    MelCepstra,
    MelSpectrogram,
    mel_cepstra,
    mel_filterbank,
    mel_spectrogram,
    num_frames,
)
from noisyclone.dsp.audio import Waveform, load_wav, save_wav
from noisyclone.dsp.metrics import AlignmentPath, cosine_similarity, dtw, mcd
from noisyclone.dsp.mixing import MixedWaveform, measure_snr, mix_at_snr
from noisyclone.dsp.vocoder import griffin_lim

__all__ = [
    "AnalysisConfig",
    "AlignmentPath",
    "MelCepstra",
    "MelSpectrogram",
    "MixedWaveform",
    "Waveform",
    "cosine_similarity",
    "dtw",
    "griffin_lim",
    "load_wav",
    "mcd",
    "measure_snr",
    "mel_cepstra",
    "mel_filterbank",
    "mel_spectrogram",
    "mix_at_snr",
    "num_frames",
    "save_wav",
]
