"""Hashing and seeding helpers used by every pipeline stage."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def canonical_json(obj) -> str:
    """Deterministic JSON encoding (sorted keys, no whitespace drift)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def sha256_json(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def stable_hash(text: str) -> int:
    """Platform-stable 63-bit hash for deriving per-item RNG streams."""
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little") & 0x7FFFFFFFFFFFFFFF


def derived_rng(seed: int, label: str) -> np.random.Generator:
    """Independent generator for one named item under a master seed."""
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence([seed, stable_hash(label)]))
    )
