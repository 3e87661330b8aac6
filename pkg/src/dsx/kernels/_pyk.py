"""Numpy fallback implementations of the hot kernels."""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF

_HAS_BITWISE_COUNT = hasattr(np, "bitwise_count")
if not _HAS_BITWISE_COUNT:
    _POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def fnv1a64(data: bytes) -> int:
    """FNV-1a 64-bit hash of a byte string."""
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & _MASK64
    return h


def _popcount_words(words: np.ndarray) -> np.ndarray:
    if _HAS_BITWISE_COUNT:
        return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)
    as_bytes = words.view(np.uint8)
    return _POP8[as_bytes].sum(axis=-1, dtype=np.int64)


def and_popcount(rows: np.ndarray, query: np.ndarray) -> np.ndarray:
    """Per-row popcount of rows & query.

    rows: (n, w) uint64, C-contiguous; query: (w,) uint64.
    """
    return _popcount_words(np.bitwise_and(rows, query[np.newaxis, :]))


def row_popcount(rows: np.ndarray) -> np.ndarray:
    """Per-row popcount of a (n, w) uint64 matrix."""
    return _popcount_words(rows)
