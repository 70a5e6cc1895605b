"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``DYNQC_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

if os.environ.get("DYNQC_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pykernels

COMPILED = _impl is not _pykernels

mix64 = _impl.mix64
keyed_hash = _impl.keyed_hash
hash_many = _impl.hash_many
slot_hashes = _impl.slot_hashes
smallest_per_slot = _impl.smallest_per_slot
count_equal = _impl.count_equal
bottomk_common = _impl.bottomk_common
containment_from_sigma = _impl.containment_from_sigma
select_bottomk = _impl.select_bottomk
select_buffered = _impl.select_buffered

MASK64 = _pykernels.MASK64

__all__ = [
    "COMPILED",
    "MASK64",
    "mix64",
    "keyed_hash",
    "hash_many",
    "slot_hashes",
    "smallest_per_slot",
    "count_equal",
    "bottomk_common",
    "containment_from_sigma",
    "select_bottomk",
    "select_buffered",
]
