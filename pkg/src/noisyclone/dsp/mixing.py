"""Noise mixing at a target signal-to-noise ratio."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from noisyclone.errors import DataError
from noisyclone.dsp.audio import Waveform

PEAK_LIMIT = 0.99


@dataclass
class MixedWaveform(Waveform):
    """A mixture plus the exact components it was built from.

    ``samples = gain * (clean_component_pre_gain + noise_component_pre_gain)``
    where both stored components already include the gain, so the SNR
    re-measured from (clean_component, noise_component) is exact.
    """

    clean_component: np.ndarray = None
    noise_component: np.ndarray = None
    gain: float = 1.0
    snr_db: float = 0.0


def measure_snr(clean: np.ndarray, noise: np.ndarray) -> float:
    p_c = float(np.mean(np.asarray(clean) ** 2))
    p_n = float(np.mean(np.asarray(noise) ** 2))
    if p_c == 0.0 or p_n == 0.0:
        raise DataError("SNR undefined for zero-power signal")
    return 10.0 * np.log10(p_c / p_n)


def _tile_noise(noise: np.ndarray, length: int, rng: np.random.Generator) -> np.ndarray:
    """Circularly tile noise starting at a seeded random offset."""
    offset = int(rng.integers(0, noise.size))
    reps = int(np.ceil((offset + length) / noise.size)) + 1
    return np.tile(noise, reps)[offset : offset + length]


def mix_at_snr(
    clean: Waveform, noise: Waveform, snr_db: float, seed: int
) -> MixedWaveform:
    """Add scaled noise so the clean/noise power ratio equals ``snr_db``.

    Powers are measured over the full overlap (the whole clean signal;
    noise is tiled from a seeded offset when shorter). If the mixture
    peak exceeds ``PEAK_LIMIT`` the whole mixture is rescaled rather
    than clipped, so the component SNR is preserved exactly.
    """
    if clean.sample_rate != noise.sample_rate:
        raise DataError("sample rate mismatch between clean and noise")
    rng = np.random.default_rng(seed)
    segment = _tile_noise(noise.samples, clean.samples.size, rng)
    p_clean = float(np.mean(clean.samples**2))
    p_noise = float(np.mean(segment**2))
    if p_clean == 0.0 or p_noise == 0.0:
        raise DataError("SNR undefined for zero-power signal")
    alpha = np.sqrt(p_clean / (p_noise * 10.0 ** (snr_db / 10.0)))
    mixture = clean.samples + alpha * segment
    peak = float(np.max(np.abs(mixture)))
    gain = PEAK_LIMIT / peak if peak > PEAK_LIMIT else 1.0
    return MixedWaveform(
        samples=gain * mixture,
        sample_rate=clean.sample_rate,
        clean_component=gain * clean.samples,
        noise_component=gain * alpha * segment,
        gain=gain,
        snr_db=snr_db,
    )
