"""Subsets of ``range(n)`` stored as Python ints (bit i set <=> i in subset)."""
from __future__ import annotations

import numpy as np


def from_mask(mask: np.ndarray) -> int:
    packed = np.packbits(np.asarray(mask, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def from_indices(indices, n: int) -> int:
    mask = np.zeros(n, dtype=bool)
    mask[np.asarray(indices, dtype=np.int64)] = True
    return from_mask(mask)


def to_mask(bits: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def to_indices(bits: int, n: int) -> np.ndarray:
    return np.flatnonzero(to_mask(bits, n))


def popcount(bits: int) -> int:
    return bits.bit_count()


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def sort_key(bits: int, n: int) -> tuple[int, tuple[int, ...]]:
    """Deterministic order: by size, then by sorted index list."""
    idx = to_indices(bits, n)
    return (len(idx), tuple(idx.tolist()))
