"""Hot numeric kernels with a compiled core and a pure-numpy fallback.

The Cython extension is optional: when it is missing (or DSX_NO_EXT=1 is
set) the numpy implementation is used instead.  Both backends are
bit-exact; benchmarks/bench_kernels.py compares their throughput.
"""

import os

if os.environ.get("DSX_NO_EXT") == "1":
    from dsx.kernels import _pyk as _impl
else:
    try:
        from dsx.kernels import _cyk as _impl  # type: ignore[no-redef]
    except ImportError:
        from dsx.kernels import _pyk as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND
fnv1a64 = _impl.fnv1a64
and_popcount = _impl.and_popcount
row_popcount = _impl.row_popcount

__all__ = ["BACKEND", "and_popcount", "fnv1a64", "row_popcount"]
