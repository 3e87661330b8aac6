#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--rows 100000] [--words 16]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from dsx.features import FeatureVector
from dsx.index import VectorIndex, retrieve
from dsx.kernels import _pyk

try:
    from dsx.kernels import _cyk
except ImportError:
    _cyk = None


def timeit(fn, repeat: int = 7) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--rows", type=int, default=100_000)
    parser.add_argument("--words", type=int, default=16, help="uint64 words per row")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    rows = rng.integers(0, 2**63, size=(args.rows, args.words), dtype=np.uint64)
    query = rng.integers(0, 2**63, size=args.words, dtype=np.uint64)
    strings = [f"feature-part-{i}".encode() for i in range(20_000)]

    backends = [("numpy", _pyk)]
    if _cyk is not None:
        backends.append(("cython", _cyk))
    else:
        print("compiled kernel not built; benchmarking the fallback only")

    print(f"{args.rows} rows x {args.words} uint64 words")
    print(f"{'kernel':<16}" + "".join(f"{name:>12}" for name, _ in backends))
    results = {}
    for kernel_name, call in (
        ("and_popcount", lambda mod: mod.and_popcount(rows, query)),
        ("row_popcount", lambda mod: mod.row_popcount(rows)),
        ("fnv1a64 x20k", lambda mod: [mod.fnv1a64(s) for s in strings]),
    ):
        row = []
        for name, mod in backends:
            seconds = timeit(lambda: call(mod))
            results[(kernel_name, name)] = seconds
            row.append(f"{seconds*1000:9.2f}ms")
        print(f"{kernel_name:<16}" + "".join(f"{cell:>12}" for cell in row))
    if _cyk is not None:
        for kernel_name in ("and_popcount", "row_popcount", "fnv1a64 x20k"):
            ratio = results[(kernel_name, "numpy")] / results[(kernel_name, "cython")]
            print(f"  {kernel_name}: cython is {ratio:.1f}x the numpy fallback")

    # End-to-end retrieval through whichever backend is selected at import.
    packed = np.frombuffer(rows.tobytes(), dtype=np.uint8).reshape(args.rows, -1)
    index = VectorIndex(packed.shape[1] * 8, packed.copy())
    qbits = rng.integers(0, 2, size=index.l, dtype=np.uint8)
    qvec = FeatureVector.from_indices(index.l, np.nonzero(qbits)[0].tolist())
    seconds = timeit(lambda: retrieve(index, qvec, k=5000))
    from dsx import kernels

    print(f"retrieve k=5000 via selected backend ({kernels.BACKEND}): "
          f"{seconds*1000:.2f}ms")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
