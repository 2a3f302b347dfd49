"""Kernel lane selection.

The hot series/polynomial loops exist twice: a Cython extension working at
the MPFR level (``_fast``) and a pure-Python twin (``pure``).  The lane is
picked once at import.  ``HELM_KERNELS`` forces the choice:

* ``auto`` (default) -- compiled if importable, else pure
* ``compiled``       -- require the extension, raise if missing
* ``pure``           -- interpreted loops regardless
"""

from __future__ import annotations

import os

from . import pure as _pure

_mode = os.environ.get("HELM_KERNELS", "auto").lower()
if _mode not in ("auto", "compiled", "pure"):
    raise ValueError(f"HELM_KERNELS must be auto|compiled|pure, got {_mode!r}")

_impl = _pure
if _mode in ("auto", "compiled"):
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        if _mode == "compiled":
            raise ImportError(
                "HELM_KERNELS=compiled but helmflow.kernels._fast is not built"
            ) from None

BACKEND: str = _impl.BACKEND
cauchy_coeff = _impl.cauchy_coeff
series_mul = _impl.series_mul
reciprocal_next = _impl.reciprocal_next
horner = _impl.horner
horner2 = _impl.horner2
aberth_sweep = _impl.aberth_sweep


def get_lane(name: str):
    """Return a specific kernel lane module (for benchmarks/tests)."""
    if name == "pure":
        return _pure
    if name == "compiled":
        from . import _fast

        return _fast
    raise ValueError(f"unknown kernel lane {name!r}")
