"""Griffin-Lim resynthesis from log-mel spectrograms.

A deliberately plain vocoder substitute: invert the mel filterbank with
its pseudo-inverse, then iterate STFT magnitude projection from a seeded
random phase.
"""

from __future__ import annotations

import numpy as np

from noisyclone.errors import ConfigError
from noisyclone.dsp.analysis import AnalysisConfig, MelSpectrogram, mel_filterbank
from noisyclone.dsp.audio import Waveform


def _hann(n: int) -> np.ndarray:
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)


def _stft(samples: np.ndarray, cfg: AnalysisConfig) -> np.ndarray:
    n = 1 + (samples.size - cfg.frame_length) // cfg.frame_shift
    idx = (
        np.arange(cfg.frame_length)[None, :]
        + cfg.frame_shift * np.arange(n)[:, None]
    )
    return np.fft.rfft(samples[idx] * _hann(cfg.frame_length), n=cfg.n_fft, axis=1)


def _istft(spec: np.ndarray, cfg: AnalysisConfig) -> np.ndarray:
    frames = np.fft.irfft(spec, n=cfg.n_fft, axis=1)[:, : cfg.frame_length]
    win = _hann(cfg.frame_length)
    frames = frames * win
    m = spec.shape[0]
    length = (m - 1) * cfg.frame_shift + cfg.frame_length
    out = np.zeros(length)
    norm = np.zeros(length)
    for i in range(m):
        lo = i * cfg.frame_shift
        out[lo : lo + cfg.frame_length] += frames[i]
        norm[lo : lo + cfg.frame_length] += win**2
    return out / np.maximum(norm, 1e-8)


def griffin_lim(
    mel: MelSpectrogram, cfg: AnalysisConfig, n_iters: int | None = None, seed: int = 0
) -> Waveform:
    """Reconstruct a waveform whose mel analysis approximates ``mel``."""
    if n_iters is None:
        n_iters = cfg.griffin_lim_iters
    if n_iters < 1:
        raise ConfigError("griffin-lim needs n_iters >= 1")
    fb, _ = mel_filterbank(cfg)
    mel_power = np.exp(mel.frames)
    lin_power = np.maximum(mel_power @ np.linalg.pinv(fb).T, 0.0)
    magnitude = np.sqrt(lin_power)

    rng = np.random.default_rng(seed)
    phase = np.exp(2j * np.pi * rng.random(magnitude.shape))
    spec = magnitude * phase
    for _ in range(n_iters):
        samples = _istft(spec, cfg)
        rebuilt = _stft(samples, cfg)
        spec = magnitude * np.exp(1j * np.angle(rebuilt))
    samples = _istft(spec, cfg)
    peak = float(np.max(np.abs(samples)))
    if peak > 1.0:
        samples = samples / peak
    return Waveform(samples, cfg.sample_rate)
