"""Moment-cumulant transforms for classical and free convolution.

The transform in both directions is the partition sum m_n = sum over the
governing family (all partitions for classical, non-crossing for free) of
the product of cumulants over block sizes.  The integer coefficient of each
block-size multiset is tabulated once per (kind, degree) by enumeration and
cached; conversions then reduce to small exactly-summed polynomial
evaluations, which keeps the triangular inversion deterministic and benign
in double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .partitions import (
    PartitionFamily,
    PartitionKind,
    crossing_count,
    enumerate_partitions,
)


class ConvolutionKind(Enum):
    CLASSICAL = "classical"
    FREE = "free"


@dataclass(frozen=True)
class MomentSequence:
    """Raw moments m_1..m_n of a law (or a formal real vector)."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) < 1:
            raise DomainError("moment sequence must contain at least m_1")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @property
    def n(self) -> int:
        return len(self.values)

    def moment(self, j: int) -> float:
        """m_j, 1-indexed."""
        return self.values[j - 1]


@dataclass(frozen=True)
class CumulantSequence:
    """Cumulants c_1..c_n, tagged by the convolution they linearize."""

    kind: ConvolutionKind
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) < 1:
            raise DomainError("cumulant sequence must contain at least order 1")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @property
    def n(self) -> int:
        return len(self.values)

    def cumulant(self, j: int) -> float:
        return self.values[j - 1]

    def __add__(self, other: "CumulantSequence") -> "CumulantSequence":
        # Additivity under the matching convolution of the underlying laws.
        if not isinstance(other, CumulantSequence):
            return NotImplemented
        if other.kind is not self.kind or other.n != self.n:
            raise DomainError("can only add cumulant sequences of equal kind and length")
        return CumulantSequence(
            self.kind, tuple(a + b for a, b in zip(self.values, other.values))
        )


def _family_kind(kind: ConvolutionKind) -> PartitionKind:
    return PartitionKind.ALL if kind is ConvolutionKind.CLASSICAL else PartitionKind.NONCROSSING


@lru_cache(maxsize=None)
def coefficient_table(kind: ConvolutionKind, n: int) -> dict[tuple[int, ...], int]:
    """Integer count of partitions in the governing family of {1..n} per
    block-size multiset (sorted descending)."""
    table: dict[tuple[int, ...], int] = {}
    for p in enumerate_partitions(PartitionFamily(_family_kind(kind), n)):
        key = p.block_sizes()
        table[key] = table.get(key, 0) + 1
    return table


def _partition_sum(kind: ConvolutionKind, degree: int, values: tuple[float, ...]) -> float:
    table = coefficient_table(kind, degree)
    return math.fsum(
        count * math.prod(values[s - 1] for s in sizes)
        for sizes, count in table.items()
    )


def moments_from_cumulants(c: CumulantSequence, ceiling: int | None = None) -> MomentSequence:
    """m_j = sum over the governing partition family of the product of
    cumulants over block sizes, for each j <= len(c)."""
    _check_ceiling(c.kind, c.n, ceiling)
    return MomentSequence(
        tuple(_partition_sum(c.kind, j, c.values) for j in range(1, c.n + 1))
    )


def cumulants_from_moments(
    m: MomentSequence, kind: ConvolutionKind, ceiling: int | None = None
) -> CumulantSequence:
    """Invert the partition sum degree by degree.

    The system is triangular: at each degree the single-block partition
    carries coefficient 1, so c_j is m_j minus the contribution of all
    partitions with more than one block, which involve lower orders only.
    The elimination runs in exact rational arithmetic (floats are rationals,
    coefficients are integers), so each returned cumulant is the correctly
    rounded exact solution for the given moment vector.
    """
    _check_ceiling(kind, m.n, ceiling)
    out: list[Fraction] = []
    for j in range(1, m.n + 1):
        table = coefficient_table(kind, j)
        rest = Fraction(0)
        for sizes, count in table.items():
            if len(sizes) == 1:
                continue
            term = Fraction(count)
            for s in sizes:
                term *= out[s - 1]
            rest += term
        out.append(Fraction(m.moment(j)) - rest)
    return CumulantSequence(kind, tuple(float(v) for v in out))


def _check_ceiling(kind: ConvolutionKind, n: int, ceiling: int | None) -> None:
    # Reuse the enumeration guard so the error message names the limit.
    family = PartitionFamily(_family_kind(kind), n)
    enumerate_partitions(family, ceiling)


def scale_law(c: CumulantSequence, t: float) -> CumulantSequence:
    """Cumulants of the t-fold convolution power: every order scales by t."""
    if not t > 0:
        raise DomainError(f"convolution power must be positive, got t={t}")
    return CumulantSequence(c.kind, tuple(t * v for v in c.values))


def dilate_moments(m: MomentSequence, s: float) -> MomentSequence:
    """Moments of the dilation x -> s*x: m_j scales by s**j."""
    return MomentSequence(tuple(s**j * v for j, v in enumerate(m.values, start=1)))


@lru_cache(maxsize=None)
def crossing_polynomial(order: int, ceiling: int | None = None) -> tuple[int, ...]:
    """Coefficients (by crossing number) of the crossing-generating
    polynomial over pairings of {1..order}; order must be even."""
    if order % 2 != 0:
        raise DomainError(f"pairings need an even ground set, got {order}")
    coeffs = [0] * (order * (order - 2) // 8 + 1)
    for p in enumerate_partitions(PartitionFamily(PartitionKind.PAIR, order), ceiling):
        coeffs[crossing_count(p)] += 1
    return tuple(coeffs)


def qgaussian_moments(q: float, n: int, ceiling: int | None = None) -> MomentSequence:
    """Moments of the crossing-weighted pairing interpolation between the
    semicircle (q=0) and the Gaussian (q=1).

    Odd moments vanish; the even moment of order 2k is the crossing
    polynomial over pairings of {1..2k} evaluated at q.
    """
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"q must lie in [0, 1], got {q}")
    if n % 2 != 0 or n < 2:
        raise DomainError(f"highest order must be a positive even integer, got {n}")
    # Guard the full request before any enumeration starts.
    enumerate_partitions(PartitionFamily(PartitionKind.PAIR, n), ceiling)
    values = []
    for j in range(1, n + 1):
        if j % 2 == 1:
            values.append(0.0)
        else:
            coeffs = crossing_polynomial(j, ceiling)
            values.append(math.fsum(c * q**k for k, c in enumerate(coeffs)))
    return MomentSequence(tuple(values))


def central_moments(m: MomentSequence) -> tuple[float, float]:
    """Second and fourth moments about the mean, from raw moments up to
    order 4 via the shift formulas."""
    if m.n < 4:
        raise DomainError("central moments up to order 4 need raw moments up to order 4")
    m1, m2, m3, m4 = m.values[:4]
    var = m2 - m1 * m1
    central4 = m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1**4
    return var, central4
