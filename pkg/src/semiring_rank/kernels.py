"""Kernel selection.

The compiled ``_speedups`` extension is used when it was built; otherwise, or
when ``SEMIRING_RANK_PURE=1`` is set, the pure-Python routines are used.
"""

import os

from . import _purekernels

BACKEND = "python"

if os.environ.get("SEMIRING_RANK_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _speedups as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _purekernels
else:
    _impl = _purekernels

or_span = _impl.or_span
or_injective = _impl.or_injective
count_mixings = _impl.count_mixings
gf2_eliminate = _impl.gf2_eliminate
dominated_subset = _impl.dominated_subset

__all__ = ["BACKEND", "or_span", "or_injective", "count_mixings", "gf2_eliminate", "dominated_subset"]
