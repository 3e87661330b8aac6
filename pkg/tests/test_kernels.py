"""Backend equivalence tests for the compiled and fallback kernels."""

import random

import numpy as np
import pytest

from oracle import fnv1a64_reference

from dsx import kernels
from dsx.kernels import _pyk

try:
    from dsx.kernels import _cyk
except ImportError:
    _cyk = None

needs_ext = pytest.mark.skipif(_cyk is None, reason="compiled kernel not built")


def test_fnv_reference_vectors():
    # Published FNV-1a 64 test vectors.
    assert _pyk.fnv1a64(b"") == 0xCBF29CE484222325
    assert _pyk.fnv1a64(b"a") == 0xAF63DC4C8601EC8C
    assert _pyk.fnv1a64(b"foobar") == 0x85944171F73967E8


def test_python_fnv_matches_definition():
    rng = random.Random(1)
    for _ in range(50):
        data = bytes(rng.randrange(256) for _ in range(rng.randrange(0, 40)))
        assert _pyk.fnv1a64(data) == fnv1a64_reference(data)


@needs_ext
def test_compiled_fnv_matches_python():
    rng = random.Random(2)
    for _ in range(200):
        data = bytes(rng.randrange(256) for _ in range(rng.randrange(0, 64)))
        assert _cyk.fnv1a64(data) == _pyk.fnv1a64(data)


@needs_ext
def test_compiled_popcounts_match_python():
    rng = np.random.default_rng(3)
    rows = rng.integers(0, 2**64, size=(257, 7), dtype=np.uint64)
    query = rng.integers(0, 2**64, size=7, dtype=np.uint64)
    assert np.array_equal(_cyk.and_popcount(rows, query), _pyk.and_popcount(rows, query))
    assert np.array_equal(_cyk.row_popcount(rows), _pyk.row_popcount(rows))


def test_popcount_against_bin_count():
    rng = np.random.default_rng(4)
    rows = rng.integers(0, 2**64, size=(31, 3), dtype=np.uint64)
    want = [sum(bin(int(w)).count("1") for w in row) for row in rows]
    assert _pyk.row_popcount(rows).tolist() == want
    assert kernels.row_popcount(rows).tolist() == want


def test_selected_backend_exposes_surface():
    assert kernels.BACKEND in ("cython", "numpy")
    assert kernels.fnv1a64(b"x") == _pyk.fnv1a64(b"x")
