"""Working-precision configuration and gmpy2 context helpers.

Every numerical routine in this package computes with gmpy2's MPFR/MPC
types at an explicitly chosen mantissa width.  The helpers here keep that
choice in one place: a :class:`PrecisionConfig` travels with a series
computation, and :func:`working_precision` scopes the gmpy2 thread
context so callers never leak precision state.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass

import gmpy2

MIN_BITS = 128

#: Highest diagonal Pade degree each default mantissa width is rated for.
#: Toeplitz systems backing high-degree approximants are ill-conditioned,
#: so the mantissa grows with the targeted degree.
PRECISION_TABLE = (
    (512, 100),   # series order up to 200
    (3328, 500),  # series order up to 1000 (~1000 decimal digits)
)


def default_bits(max_degree: int) -> int:
    """Mantissa bits rated for a series developed to order ``max_degree``."""
    for bits, pade_degree in PRECISION_TABLE:
        if max_degree <= 2 * pade_degree:
            return bits
    raise ValueError(
        f"series order {max_degree} exceeds the supported maximum "
        f"{2 * PRECISION_TABLE[-1][1]}; supply an explicit precision"
    )


def max_degree_for_bits(bits: int) -> int:
    """Highest rated diagonal Pade degree for a given mantissa width."""
    rated = 0
    for table_bits, pade_degree in PRECISION_TABLE:
        if bits >= table_bits:
            rated = pade_degree
    return rated


@dataclass(frozen=True)
class PrecisionConfig:
    """Mantissa width and highest series order for a germ computation."""

    mantissa_bits: int = 512
    max_degree: int = 200

    def __post_init__(self):
        if self.mantissa_bits < MIN_BITS:
            raise ValueError(f"mantissa_bits must be >= {MIN_BITS}")
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")

    @classmethod
    def for_degree(cls, max_degree: int, mantissa_bits: int | None = None):
        """Config for series order ``max_degree`` with table-default bits."""
        bits = default_bits(max_degree) if mantissa_bits is None else mantissa_bits
        return cls(mantissa_bits=bits, max_degree=max_degree)

    @property
    def epsilon(self) -> float:
        """Unit roundoff of the working precision."""
        return 2.0 ** (1 - self.mantissa_bits)

    @property
    def series_floor(self) -> float:
        """Magnitude below which a coefficient counts as numerically zero."""
        return 2.0 ** (-self.mantissa_bits // 2)


@contextlib.contextmanager
def working_precision(bits: int):
    """Scope the gmpy2 thread context to ``bits`` mantissa bits."""
    ctx = gmpy2.get_context()
    saved = ctx.precision
    ctx.precision = bits
    try:
        yield ctx
    finally:
        ctx.precision = saved


def to_mpc(value) -> gmpy2.mpc:
    """Coerce a python/numpy/gmpy2 number to mpc at context precision."""
    if isinstance(value, gmpy2.mpc):
        return +value
    return gmpy2.mpc(value)


def mpc_to_complex(value) -> complex:
    return complex(value)


def decimal_str(x) -> str:
    """Full-precision decimal rendering of an mpfr (for CSV dumps)."""
    return str(gmpy2.mpfr(x))
