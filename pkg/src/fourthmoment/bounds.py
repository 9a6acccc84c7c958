"""Fourth-moment approximation bounds and the kurtosis divisibility audit.

The bound evaluators compute the right-hand sides of the quantitative
Gaussian / semicircle approximation theorems for N-divisible laws with mean
zero and variance one:

* classical: C * sqrt(m4 - 3 + 3/N), with the infinitely divisible limit
  C * sqrt(m4 - 3) as N grows;
* free:      2K * sqrt(m4 - 2 + 2/N) for finite N, and K * sqrt(m4 - 2) in
  the infinitely divisible limit (the limit statement drops the factor 2;
  both variants are labelled on the report).

C defaults to the Berry-Esseen constant 0.4748.  No numerical value is
known for the free constant K, so it defaults to 1 and is always printed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .cumulants import MomentSequence, central_moments
from .distributions import (
    compound_poisson_moments,
    excess_fourth_moment_lognormal,
    gaussian_spec,
    kesten_mckay,
    qgaussian_spec,
    semicircle_spec,
    shifted_lognormal,
    standardized_poisson,
)
from .errors import (
    DomainError,
    NegativeRadicandError,
    UnknownExampleError,
    ZeroVarianceError,
)
from .kolmogorov import DEFAULT_TOLERANCE, DistanceResult, distance

DEFAULT_C = 0.4748
DEFAULT_K = 1.0

EQUALITY_TOLERANCE = 1e-12


class Theorem(Enum):
    CLASSICAL_ID = "classical-id"
    FREE_ID = "free-id"
    CLASSICAL_NDIV = "classical-ndiv"
    FREE_NDIV = "free-ndiv"


@dataclass(frozen=True)
class BoundReport:
    """Right-hand side of a bound, the constants used, and, when a distance
    was measured, whether the bound is satisfied within its certificate."""

    theorem: Theorem
    m4: float
    N: float  # positive integer or math.inf
    constant_C: float
    constant_K: float
    rhs: float
    formula: str
    example: str | None = None
    params: dict[str, float] | None = None
    measured: DistanceResult | None = None
    satisfied: bool | None = None

    def with_measurement(self, measured: DistanceResult) -> "BoundReport":
        ok = measured.value - measured.error_bound <= self.rhs
        return replace(self, measured=measured, satisfied=ok)

    def as_dict(self) -> dict:
        out = {
            "theorem": self.theorem.value,
            "m4": self.m4,
            "N": "inf" if math.isinf(self.N) else int(self.N),
            "constant_C": self.constant_C,
            "constant_K": self.constant_K,
            "rhs": self.rhs,
            "formula": self.formula,
        }
        if self.example is not None:
            out["example"] = self.example
            out["params"] = self.params
        out["measured"] = self.measured.as_dict() if self.measured else None
        out["satisfied"] = self.satisfied
        return out


def _check_n(N: float) -> float:
    if math.isinf(N):
        if N > 0:
            return math.inf
        raise DomainError("N must be a positive integer or infinity")
    if N != int(N) or N < 1:
        raise DomainError(f"N must be a positive integer or infinity, got {N}")
    return float(int(N))


def classical_bound(m4: float, N: float, C: float = DEFAULT_C) -> BoundReport:
    """Gaussian approximation bound C*sqrt(m4 - 3 + 3/N) for a classical
    N-divisible law with mean 0 and variance 1 (3/N vanishes at N=inf)."""
    N = _check_n(N)
    radicand = m4 - 3.0 + (0.0 if math.isinf(N) else 3.0 / N)
    if radicand < 0.0:
        raise NegativeRadicandError(
            f"m4 - 3 + 3/N = {radicand:.6g} is negative: the law cannot be "
            f"{_n_str(N)}-divisible; run the kurtosis audit for the largest admissible N"
        )
    theorem = Theorem.CLASSICAL_ID if math.isinf(N) else Theorem.CLASSICAL_NDIV
    formula = "C*sqrt(m4-3)" if math.isinf(N) else "C*sqrt(m4-3+3/N)"
    return BoundReport(
        theorem=theorem,
        m4=m4,
        N=N,
        constant_C=C,
        constant_K=DEFAULT_K,
        rhs=C * math.sqrt(radicand),
        formula=formula,
    )


def free_bound(m4: float, N: float, K: float = DEFAULT_K) -> BoundReport:
    """Semicircle approximation bound for a free N-divisible law with mean 0
    and variance 1: 2K*sqrt(m4 - 2 + 2/N) for finite N, K*sqrt(m4 - 2) in
    the infinitely divisible limit."""
    N = _check_n(N)
    radicand = m4 - 2.0 + (0.0 if math.isinf(N) else 2.0 / N)
    if radicand < 0.0:
        raise NegativeRadicandError(
            f"m4 - 2 + 2/N = {radicand:.6g} is negative: the law cannot be "
            f"{_n_str(N)}-divisible in the free sense; run the kurtosis audit"
        )
    if math.isinf(N):
        theorem, formula, rhs = Theorem.FREE_ID, "K*sqrt(m4-2)", K * math.sqrt(radicand)
    else:
        theorem, formula, rhs = (
            Theorem.FREE_NDIV,
            "2*K*sqrt(m4-2+2/N)",
            2.0 * K * math.sqrt(radicand),
        )
    return BoundReport(
        theorem=theorem,
        m4=m4,
        N=N,
        constant_C=DEFAULT_C,
        constant_K=K,
        rhs=rhs,
        formula=formula,
    )


def _n_str(N: float) -> str:
    return "inf" if math.isinf(N) else str(int(N))


# ---------------------------------------------------------------------------
# Kurtosis divisibility audit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KurtosisAudit:
    """Classical and free kurtosis with the largest divisibility order each
    admits: n-divisibility forces kurtosis >= -2/n (classical) and >= -1/n
    (free), with equality exactly for the n-fold convolution power of the
    symmetric two-point law at +-1."""

    kurt_classical: float
    kurt_free: float
    max_n_classical: float  # positive integer or math.inf
    max_n_free: float
    equality_classical: bool
    equality_free: bool

    def as_dict(self) -> dict:
        return {
            "kurt_classical": self.kurt_classical,
            "kurt_free": self.kurt_free,
            "max_n_classical": _n_str(self.max_n_classical),
            "max_n_free": _n_str(self.max_n_free),
            "equality_classical": self.equality_classical,
            "equality_free": self.equality_free,
        }


def _max_divisibility(kurt: float, floor_constant: float) -> tuple[float, bool]:
    # Largest n with kurt >= -floor_constant/n; the exact boundary counts as
    # admissible (the extremal two-point convolution power attains it).
    if kurt >= 0.0:
        return math.inf, False
    x = -floor_constant / kurt
    nearest = round(x)
    if nearest >= 1 and abs(x - nearest) <= EQUALITY_TOLERANCE * max(1.0, abs(x)):
        return float(nearest), True
    return float(math.floor(x)), False


def kurtosis_audit(m: MomentSequence) -> KurtosisAudit:
    """Audit a moment sequence (orders 1..4) for divisibility obstructions."""
    var, central4 = central_moments(m)
    if var <= 0.0:
        raise ZeroVarianceError(f"central second moment {var:.6g} is not positive")
    kurt = central4 / (var * var) - 3.0
    kurt_free = kurt + 1.0
    max_classical, eq_classical = _max_divisibility(kurt, 2.0)
    max_free, eq_free = _max_divisibility(kurt_free, 1.0)
    return KurtosisAudit(
        kurt_classical=kurt,
        kurt_free=kurt_free,
        max_n_classical=max_classical,
        max_n_free=max_free,
        equality_classical=eq_classical,
        equality_free=eq_free,
    )


# ---------------------------------------------------------------------------
# Worked examples
# ---------------------------------------------------------------------------

def two_point_jump_moments(lam: float) -> MomentSequence:
    """Moments of the symmetric two-point jump law at +-1/sqrt(lam): the
    default jump distribution for the compound Poisson example, centered
    with variance 1/lam."""
    if not lam > 0:
        raise DomainError(f"rate must be positive, got {lam}")
    return MomentSequence((0.0, 1.0 / lam, 0.0, 1.0 / lam**2))


def verify_example(
    name: str,
    *,
    C: float = DEFAULT_C,
    K: float = DEFAULT_K,
    tolerance: float = DEFAULT_TOLERANCE,
    **params: float,
) -> BoundReport:
    """Reproduce one worked example: evaluate the bound and, when the
    catalog supports it, measure the distance and set the satisfied flag."""
    if name == "poisson":
        n = int(params.get("n", 1))
        spec = standardized_poisson(n)
        report = classical_bound(3.0 + 1.0 / n, math.inf, C)
        report = report.with_measurement(distance(spec, gaussian_spec(), tolerance))
    elif name == "compound-poisson":
        lam = float(params.get("lam", 1.0))
        nu_m4 = float(params.get("nu_m4", 1.0 / lam**2))
        report = classical_bound(lam * nu_m4 + 3.0, math.inf, C)
    elif name == "lognormal":
        sigma = float(params.get("sigma", 0.1))
        spec = shifted_lognormal(sigma)
        report = classical_bound(3.0 + excess_fourth_moment_lognormal(sigma), math.inf, C)
        report = report.with_measurement(distance(spec, gaussian_spec(), tolerance))
    elif name == "qgaussian":
        q = float(params.get("q", 0.5))
        spec = qgaussian_spec(q)
        report = free_bound(spec.moments.moment(4), math.inf, K)
    elif name == "kesten-mckay":
        t = float(params.get("t", 1.5))
        spec = kesten_mckay(t)
        if t >= 1.0:
            report = free_bound(1.0 + t, math.inf, K)
        else:
            # Divisibility order 1/(1-t); the bound only applies when that
            # is an integer.
            n_exact = 1.0 / (1.0 - t)
            n = round(n_exact)
            if abs(n_exact - n) > 1e-9 * n:
                raise DomainError(
                    f"t={t} gives non-integral divisibility order {n_exact:.6g}; "
                    "the finite-order bound needs 1/(1-t) integral"
                )
            report = free_bound(1.0 + t, float(n), K)
        report = report.with_measurement(distance(spec, semicircle_spec(), tolerance))
    else:
        raise UnknownExampleError(
            f"unknown example {name!r}; known: poisson, compound-poisson, "
            "lognormal, qgaussian, kesten-mckay"
        )
    return replace(report, example=name, params=dict(params))


# Default batch for `verify --all`: one row per worked example, plus the
# finite-order branch of the Kesten-McKay family.
VERIFICATION_SUITE: tuple[tuple[str, dict[str, float]], ...] = (
    ("poisson", {"n": 100}),
    ("compound-poisson", {"lam": 2.0, "nu_m4": 0.25}),
    ("lognormal", {"sigma": 0.1}),
    ("qgaussian", {"q": 0.3}),
    ("kesten-mckay", {"t": 1.5}),
    ("kesten-mckay", {"t": 0.75}),
)


def run_verification_suite(
    *,
    C: float = DEFAULT_C,
    K: float = DEFAULT_K,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[BoundReport]:
    return [
        verify_example(name, C=C, K=K, tolerance=tolerance, **params)
        for name, params in VERIFICATION_SUITE
    ]
