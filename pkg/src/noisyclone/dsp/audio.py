"""Waveform container and 16-bit mono RIFF PCM I/O."""

from __future__ import annotations

import wave
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from noisyclone.errors import DataError

DEFAULT_SAMPLE_RATE = 16000
_INT16_FULL_SCALE = 32767.0


@dataclass
class Waveform:
    """Mono audio: float64 samples nominally in [-1, 1]."""

    samples: np.ndarray
    sample_rate: int = DEFAULT_SAMPLE_RATE

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise DataError("empty audio")
        if not np.all(np.isfinite(self.samples)):
            raise DataError("non-finite samples")
        if self.sample_rate <= 0:
            raise DataError(f"bad sample rate {self.sample_rate}")

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate

    def power(self) -> float:
        return float(np.mean(self.samples**2))


def load_wav(path: str | Path) -> Waveform:
    """Read a 16-bit mono PCM RIFF file."""
    try:
        with wave.open(str(path), "rb") as f:
            n_channels = f.getnchannels()
            sampwidth = f.getsampwidth()
            rate = f.getframerate()
            n = f.getnframes()
            raw = f.readframes(n)
    except (wave.Error, EOFError) as exc:
        raise DataError(f"malformed wav {path}: {exc}") from exc
    if n_channels != 1:
        raise DataError(f"mono required, got {n_channels} channels: {path}")
    if sampwidth != 2:
        raise DataError(f"16-bit PCM required, got {8 * sampwidth}-bit: {path}")
    if n == 0 or not raw:
        raise DataError(f"empty audio: {path}")
    ints = np.frombuffer(raw, dtype="<i2")
    return Waveform(ints.astype(np.float64) / _INT16_FULL_SCALE, rate)


def save_wav(path: str | Path, wav: Waveform) -> None:
    """Write 16-bit mono PCM; samples are clipped to full scale."""
    scaled = np.clip(np.rint(wav.samples * _INT16_FULL_SCALE), -32768, 32767)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with wave.open(str(path), "wb") as f:
        f.setnchannels(1)
        f.setsampwidth(2)
        f.setframerate(wav.sample_rate)
        f.writeframes(scaled.astype("<i2").tobytes())
