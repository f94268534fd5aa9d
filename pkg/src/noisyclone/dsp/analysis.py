"""Short-time mel analysis and cepstra.

Frames are taken without centering: frame ``i`` covers samples
``[i*frame_shift, i*frame_shift + frame_length)`` and the frame count is
``1 + floor((len - frame_length) / frame_shift)``. Mel values are natural
logs of floored triangular-filterbank energies of the Hann-windowed power
spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.fft

from noisyclone.errors import ConfigError, DataError
from noisyclone.dsp.audio import Waveform


@dataclass(frozen=True)
class AnalysisConfig:
    sample_rate: int = 16000
    frame_length: int = 512
    frame_shift: int = 128
    n_fft: int = 512
    n_mels: int = 32
    fmin: float = 0.0
    fmax: float = 8000.0
    energy_floor: float = 1e-10
    cepstral_order: int = 13
    griffin_lim_iters: int = 60

    def __post_init__(self):
        if self.n_fft < self.frame_length:
            raise ConfigError("n_fft must be >= frame_length")
        if self.frame_shift <= 0 or self.frame_length <= 0:
            raise ConfigError("frame_length and frame_shift must be positive")
        if self.n_mels < 2:
            raise ConfigError("need at least 2 mel bands")
        if self.cepstral_order >= self.n_mels:
            raise ConfigError("cepstral order must be below n_mels")
        if self.energy_floor <= 0:
            raise ConfigError("energy floor must be positive")
        if not (0 <= self.fmin < self.fmax <= self.sample_rate / 2):
            raise ConfigError("bad mel frequency range")

    @staticmethod
    def large() -> "AnalysisConfig":
        """80-band preset for full-scale audio; not the default."""
        return AnalysisConfig(
            frame_length=800, frame_shift=200, n_fft=1024, n_mels=80
        )

    @property
    def log_floor(self) -> float:
        return float(np.log(self.energy_floor))

    def to_dict(self) -> dict:
        return {
            "sample_rate": self.sample_rate,
            "frame_length": self.frame_length,
            "frame_shift": self.frame_shift,
            "n_fft": self.n_fft,
            "n_mels": self.n_mels,
            "fmin": self.fmin,
            "fmax": self.fmax,
            "energy_floor": self.energy_floor,
            "cepstral_order": self.cepstral_order,
            "griffin_lim_iters": self.griffin_lim_iters,
        }

    @staticmethod
    def from_dict(d: dict) -> "AnalysisConfig":
        return AnalysisConfig(**d)


@dataclass
class MelSpectrogram:
    """frames: (M, n_mels) natural-log mel energies."""

    frames: np.ndarray
    frame_shift: int
    frame_length: int
    n_mels: int

    def __post_init__(self):
        self.frames = np.asarray(self.frames, dtype=np.float64)
        if self.frames.ndim != 2 or self.frames.shape[0] < 1:
            raise DataError("mel spectrogram needs at least one frame")
        if self.frames.shape[1] != self.n_mels:
            raise DataError("n_mels does not match frame width")
        if not np.all(np.isfinite(self.frames)):
            raise DataError("non-finite mel values")

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]


@dataclass
class MelCepstra:
    """frames: (M, order) DCT-II cepstra of log-mels, 0th coefficient dropped."""

    frames: np.ndarray
    order: int

    def __post_init__(self):
        self.frames = np.asarray(self.frames, dtype=np.float64)
        if self.frames.ndim != 2 or self.frames.shape[0] < 1:
            raise DataError("cepstra need at least one frame")
        if self.frames.shape[1] != self.order:
            raise DataError("order does not match frame width")

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]


def hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=np.float64) / 700.0)


def mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


@lru_cache(maxsize=8)
def _filterbank_cached(sample_rate, n_fft, n_mels, fmin, fmax):
    n_bins = n_fft // 2 + 1
    anchors_mel = np.linspace(hz_to_mel(fmin), hz_to_mel(fmax), n_mels + 2)
    anchors_hz = mel_to_hz(anchors_mel)
    bin_hz = np.arange(n_bins) * sample_rate / n_fft
    fb = np.zeros((n_mels, n_bins))
    for m in range(n_mels):
        lo, center, hi = anchors_hz[m], anchors_hz[m + 1], anchors_hz[m + 2]
        rising = (bin_hz - lo) / (center - lo)
        falling = (hi - bin_hz) / (hi - center)
        fb[m] = np.maximum(0.0, np.minimum(rising, falling))
    return fb, anchors_hz[1:-1]


def mel_filterbank(cfg: AnalysisConfig):
    """Triangular filterbank (n_mels, n_fft//2+1) and the band centers in Hz."""
    return _filterbank_cached(
        cfg.sample_rate, cfg.n_fft, cfg.n_mels, cfg.fmin, cfg.fmax
    )


def num_frames(n_samples: int, cfg: AnalysisConfig) -> int:
    if n_samples < cfg.frame_length:
        return 0
    return 1 + (n_samples - cfg.frame_length) // cfg.frame_shift


def frame_signal(samples: np.ndarray, cfg: AnalysisConfig) -> np.ndarray:
    m = num_frames(samples.size, cfg)
    if m == 0:
        raise DataError("audio shorter than one frame")
    idx = np.arange(cfg.frame_length)[None, :] + cfg.frame_shift * np.arange(m)[:, None]
    return samples[idx]


def _hann(n: int) -> np.ndarray:
    # periodic Hann, constant-overlap-add at shift = length/4
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)


def power_spectrogram(wav: Waveform, cfg: AnalysisConfig) -> np.ndarray:
    if wav.sample_rate != cfg.sample_rate:
        raise DataError(
            f"sample rate {wav.sample_rate} != analysis rate {cfg.sample_rate}"
        )
    frames = frame_signal(wav.samples, cfg) * _hann(cfg.frame_length)
    spec = np.fft.rfft(frames, n=cfg.n_fft, axis=1)
    return np.abs(spec) ** 2


def mel_spectrogram(wav: Waveform, cfg: AnalysisConfig) -> MelSpectrogram:
    """Log-mel analysis; every entry is >= log(energy_floor)."""
    power = power_spectrogram(wav, cfg)
    fb, _ = mel_filterbank(cfg)
    energies = power @ fb.T
    logmel = np.log(np.maximum(energies, cfg.energy_floor))
    return MelSpectrogram(logmel, cfg.frame_shift, cfg.frame_length, cfg.n_mels)


def mel_cepstra(mel: MelSpectrogram, order: int = 13) -> MelCepstra:
    """DCT-II (orthonormal) of the log-mel rows, keeping coefficients 1..order."""
    if order >= mel.n_mels:
        raise ConfigError("cepstral order must be below n_mels")
    coeffs = scipy.fft.dct(mel.frames, type=2, norm="ortho", axis=1)
    return MelCepstra(coeffs[:, 1 : order + 1], order)
