"""Model-set kernel with backend selection.

Two interchangeable backends implement the model-level scan loops
(member extraction, intersection closure, closedness checks):

* ``_bitkern``: Cython extension, used when importable;
* ``pybits``: pure Python, always available.

Set ``DEFPOS_KERNEL=py`` to force the pure backend, ``DEFPOS_KERNEL=c``
to require the compiled one (ImportError if it is not built).

Only the loops that scan model pairs or member lists are taken from
the compiled backend; ``count`` and ``common_ones`` stay pure because
``int.bit_count`` and member bit-scanning already run at C speed and
beat a buffer round-trip.  The plane-level table algebra (masks,
cofactors, coordinate moves) is big-int arithmetic shared from
``pybits`` under both backends.

``benchmarks/compare_kernels.py`` times the backends side by side.
"""

from __future__ import annotations

import os

from . import pybits
from .pybits import (
    common_ones,
    count,
    drop_coord,
    exists_coord,
    full_mask,
    iff_conj_mask,
    insert_coord,
    permute_coords,
    swap_coords,
    var_mask,
)


def _select():
    forced = os.environ.get("DEFPOS_KERNEL", "").strip().lower()
    if forced in ("py", "python", "pure"):
        return pybits, "python"
    try:
        from . import _bitkern
    except ImportError:
        if forced in ("c", "cython", "compiled"):
            raise ImportError(
                "DEFPOS_KERNEL=c requested but the compiled kernel is not built"
            ) from None
        return pybits, "python"
    return _bitkern, "cython"


_impl, BACKEND = _select()

indices = _impl.indices
closure = _impl.closure
closure_update = _impl.closure_update
is_closed = _impl.is_closed
closure_witness = _impl.closure_witness

__all__ = [
    "BACKEND",
    "closure",
    "closure_update",
    "closure_witness",
    "common_ones",
    "count",
    "drop_coord",
    "exists_coord",
    "full_mask",
    "iff_conj_mask",
    "indices",
    "insert_coord",
    "is_closed",
    "permute_coords",
    "pybits",
    "swap_coords",
    "var_mask",
]
