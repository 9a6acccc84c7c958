"""Catalog of laws with exact moments and certified CDFs.

Every catalog entry is a DistributionSpec.  Continuous entries carry a CDF
(scalar and vectorized), a certified absolute evaluation error, and a
Lipschitz bound (a sup-density bound) for the distance engine.  Atomic
entries carry a finite atom list with the truncated tail mass recorded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import special, stats

from .cumulants import (
    ConvolutionKind,
    CumulantSequence,
    MomentSequence,
    moments_from_cumulants,
    qgaussian_moments,
)
from .errors import DomainError

SQRT_2PI = math.sqrt(2.0 * math.pi)

# Per-side truncation target; the recorded two-sided mass stays below 1e-14.
POISSON_TAIL_TARGET = 5e-15
KESTEN_MCKAY_CDF_ERROR = 1e-9


@dataclass(frozen=True)
class DistributionSpec:
    """A catalog law: evaluable CDF and/or exact moments.

    ``cdf_batch`` takes an ascending float array and returns CDF values; the
    scalar ``cdf`` is always consistent with it.  ``cdf_error`` is a
    certified absolute error valid for every evaluation.  ``atoms`` is an
    ascending tuple of (location, weight) pairs; ``truncated_tail_mass`` is
    the probability discarded when the atom list was cut off.
    """

    name: str
    params: dict[str, float]
    support: tuple[float, float]
    moments: MomentSequence | None = None
    cdf: Callable[[float], float] | None = None
    cdf_batch: Callable[[np.ndarray], np.ndarray] | None = None
    cdf_error: float = 0.0
    lipschitz_bound: float | None = None
    atoms: tuple[tuple[float, float], ...] | None = None
    truncated_tail_mass: float = 0.0
    meta: dict[str, float] = field(default_factory=dict)

    def cdf_values(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized CDF, falling back to the scalar path."""
        if self.cdf_batch is not None:
            return self.cdf_batch(np.asarray(xs, dtype=float))
        if self.cdf is None:
            raise DomainError(f"{self.name} has no CDF")
        return np.array([self.cdf(float(x)) for x in np.asarray(xs, dtype=float)])


# ---------------------------------------------------------------------------
# Reference CDFs
# ---------------------------------------------------------------------------

def gaussian_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def _gaussian_cdf_batch(xs: np.ndarray) -> np.ndarray:
    return special.ndtr(xs)


def semicircle_cdf(x: float) -> float:
    """CDF of the unit-variance semicircle law (support [-2, 2])."""
    if x <= -2.0:
        return 0.0
    if x >= 2.0:
        return 1.0
    return 0.5 + x * math.sqrt(4.0 - x * x) / (4.0 * math.pi) + math.asin(x / 2.0) / math.pi


def _semicircle_cdf_batch(xs: np.ndarray) -> np.ndarray:
    x = np.clip(xs, -2.0, 2.0)
    return 0.5 + x * np.sqrt(4.0 - x * x) / (4.0 * np.pi) + np.arcsin(x / 2.0) / np.pi


def gaussian_spec() -> DistributionSpec:
    return DistributionSpec(
        name="gaussian",
        params={},
        support=(-math.inf, math.inf),
        moments=MomentSequence((0.0, 1.0, 0.0, 3.0)),
        cdf=gaussian_cdf,
        cdf_batch=_gaussian_cdf_batch,
        cdf_error=1e-15,
        lipschitz_bound=1.0 / SQRT_2PI,
    )


def semicircle_spec() -> DistributionSpec:
    return DistributionSpec(
        name="semicircle",
        params={},
        support=(-2.0, 2.0),
        moments=MomentSequence((0.0, 1.0, 0.0, 2.0)),
        cdf=semicircle_cdf,
        cdf_batch=_semicircle_cdf_batch,
        cdf_error=1e-14,
        lipschitz_bound=1.0 / math.pi,
    )


# ---------------------------------------------------------------------------
# Standardized Poisson
# ---------------------------------------------------------------------------

def standardized_poisson(n: int) -> DistributionSpec:
    """The Poisson(n) law centered by n and scaled by 1/sqrt(n).

    Atoms sit at (k - n)/sqrt(n) with Poisson(n) weights; each tail is
    truncated once its mass drops below 5e-15, keeping the recorded
    two-sided discard under 1e-14.
    """
    if n < 1:
        raise DomainError(f"Poisson parameter must be a positive integer, got {n}")
    dist = stats.poisson(n)
    # Largest k_lo whose discarded left mass cdf(k_lo - 1) stays under target,
    # and smallest k_hi whose discarded right mass sf(k_hi) does.
    k_lo = max(int(dist.ppf(POISSON_TAIL_TARGET)), 0)
    while k_lo > 0 and dist.cdf(k_lo - 1) >= POISSON_TAIL_TARGET:
        k_lo -= 1
    k_hi = int(dist.isf(POISSON_TAIL_TARGET))
    while dist.sf(k_hi) >= POISSON_TAIL_TARGET:
        k_hi += 1
    ks = np.arange(k_lo, k_hi + 1)
    weights = dist.pmf(ks)
    xs = (ks - n) / math.sqrt(n)
    tail = float((dist.cdf(k_lo - 1) if k_lo > 0 else 0.0) + dist.sf(k_hi))
    atoms = tuple(zip(xs.tolist(), weights.tolist()))
    cumulative = np.cumsum(weights)

    def cdf(x: float) -> float:
        i = int(np.searchsorted(xs, x, side="right"))
        return float(cumulative[i - 1]) if i > 0 else 0.0

    def cdf_batch(vals: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(xs, vals, side="right")
        padded = np.concatenate(([0.0], cumulative))
        return padded[idx]

    return DistributionSpec(
        name="poisson",
        params={"n": float(n)},
        support=(float(xs[0]), float(xs[-1])),
        moments=MomentSequence((0.0, 1.0, 1.0 / math.sqrt(n), 3.0 + 1.0 / n)),
        cdf=cdf,
        cdf_batch=cdf_batch,
        cdf_error=1e-13,
        atoms=atoms,
        truncated_tail_mass=tail,
    )


# ---------------------------------------------------------------------------
# Compound Poisson (moments only)
# ---------------------------------------------------------------------------

def compound_poisson_moments(lam: float, nu_moments: MomentSequence) -> MomentSequence:
    """Moments of the compound Poisson law whose n-th classical cumulant is
    lam times the n-th moment of the jump law."""
    if not lam > 0:
        raise DomainError(f"rate must be positive, got {lam}")
    if nu_moments.n < 4:
        raise DomainError("jump law moments must reach order 4")
    cumulants = CumulantSequence(
        ConvolutionKind.CLASSICAL, tuple(lam * v for v in nu_moments.values)
    )
    return moments_from_cumulants(cumulants)


# ---------------------------------------------------------------------------
# Centered unit-variance log-normal
# ---------------------------------------------------------------------------

def shifted_lognormal(sigma: float) -> DistributionSpec:
    """exp(m + sigma*Z) minus its mean, with m chosen so the variance is 1.

    m = -(1/2) log(e^{2 sigma^2} - e^{sigma^2}); the excess fourth moment is
    e^{4 sigma^2} + 2 e^{3 sigma^2} + 3 e^{2 sigma^2} - 6.
    """
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    s2 = sigma * sigma
    m = -0.5 * math.log(math.exp(2.0 * s2) - math.exp(s2))
    shift = math.exp(m + s2 / 2.0)

    # Raw moments of W = exp(m + sigma Z): E W^k = exp(k m + k^2 sigma^2 / 2).
    ew = [1.0] + [math.exp(k * m + k * k * s2 / 2.0) for k in range(1, 4)]
    m3 = math.fsum(
        math.comb(3, i) * ew[i] * (-shift) ** (3 - i) for i in range(4)
    )
    m4 = 3.0 + excess_fourth_moment_lognormal(sigma)

    def cdf(x: float) -> float:
        if x <= -shift:
            return 0.0
        return gaussian_cdf((math.log(x + shift) - m) / sigma)

    def cdf_batch(vals: np.ndarray) -> np.ndarray:
        out = np.zeros_like(vals, dtype=float)
        ok = vals > -shift
        out[ok] = special.ndtr((np.log(vals[ok] + shift) - m) / sigma)
        return out

    # Density peaks at the log-normal mode.
    lipschitz = math.exp(s2 / 2.0 - m) / (sigma * SQRT_2PI)

    return DistributionSpec(
        name="lognormal",
        params={"sigma": sigma},
        support=(-shift, math.inf),
        moments=MomentSequence((0.0, 1.0, m3, m4)),
        cdf=cdf,
        cdf_batch=cdf_batch,
        cdf_error=1e-14,
        lipschitz_bound=lipschitz,
        meta={"m": m, "shift": shift},
    )


def excess_fourth_moment_lognormal(sigma: float) -> float:
    s2 = sigma * sigma
    return math.exp(4.0 * s2) + 2.0 * math.exp(3.0 * s2) + 3.0 * math.exp(2.0 * s2) - 6.0


# ---------------------------------------------------------------------------
# Kesten-McKay
# ---------------------------------------------------------------------------

def _kesten_mckay_density(t: float, x: np.ndarray) -> np.ndarray:
    inside = np.abs(x) < 2.0 * math.sqrt(t)
    out = np.zeros_like(x, dtype=float)
    xi = x[inside]
    out[inside] = np.sqrt(4.0 * t - xi * xi) / (2.0 * math.pi * (1.0 - (1.0 - t) * xi * xi))
    return out


def kesten_mckay(t: float) -> DistributionSpec:
    """The one-parameter law with density sqrt(4t - x^2) / (2 pi (1 - (1-t) x^2))
    on |x| < 2 sqrt(t); requires t > 1/2 so the denominator stays positive.

    The CDF integrates the density through the substitution x = 2 sqrt(t)
    sin(theta), which removes the square-root endpoint weakening; the
    resulting smooth integrand is handled by an adaptive embedded
    Gauss-pair rule with a certified absolute error below 1e-9.
    """
    if not t > 0.5:
        raise DomainError(f"parameter must exceed 1/2, got t={t}")
    edge = 2.0 * math.sqrt(t)
    a = 4.0 * t * (1.0 - t)

    def integrand(theta: np.ndarray) -> np.ndarray:
        c = np.cos(theta)
        s = np.sin(theta)
        return (2.0 * t / math.pi) * c * c / (1.0 - a * s * s)

    def cdf_batch(vals: np.ndarray) -> np.ndarray:
        vals = np.asarray(vals, dtype=float)
        theta = np.arcsin(np.clip(vals / edge, -1.0, 1.0))
        order = np.argsort(theta, kind="stable")
        cum, err = certified_cumulative(
            integrand, -math.pi / 2.0, theta[order], KESTEN_MCKAY_CDF_ERROR / 2.0
        )
        if err > KESTEN_MCKAY_CDF_ERROR:
            raise DomainError(
                f"quadrature error {err:.3g} exceeds the certified budget"
            )
        out = np.empty_like(cum)
        out[order] = cum
        return np.clip(out, 0.0, 1.0)

    def cdf(x: float) -> float:
        return float(cdf_batch(np.array([x]))[0])

    # Sup of the density located numerically; 10% inflation keeps the bound
    # certified against grid placement.
    grid = np.linspace(-edge, edge, 4001)
    lipschitz = 1.1 * float(_kesten_mckay_density(t, grid).max())

    return DistributionSpec(
        name="kesten-mckay",
        params={"t": t},
        support=(-edge, edge),
        moments=MomentSequence((0.0, 1.0, 0.0, 1.0 + t)),
        cdf=cdf,
        cdf_batch=cdf_batch,
        cdf_error=KESTEN_MCKAY_CDF_ERROR,
        lipschitz_bound=lipschitz,
    )


# ---------------------------------------------------------------------------
# q-Gaussian (moments only)
# ---------------------------------------------------------------------------

def qgaussian_spec(q: float, order: int = 8) -> DistributionSpec:
    """Moments-only entry for the crossing-weighted pairing family."""
    moments = qgaussian_moments(q, order)
    return DistributionSpec(
        name="qgaussian",
        params={"q": q},
        support=(-math.inf, math.inf),
        moments=moments,
    )


# ---------------------------------------------------------------------------
# Certified cumulative quadrature
# ---------------------------------------------------------------------------

_GAUSS_LO = special.roots_legendre(7)
_GAUSS_HI = special.roots_legendre(15)


_GAUSS_CHUNK = 1 << 18


def _gauss_pair(fn, lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Integrate fn over each [lo_i, hi_i] with an embedded 7/15-point
    Gauss pair; returns (high-order values, error estimates).  Work is
    chunked so the node matrices stay small for large gap counts."""
    n = len(lo)
    out = np.empty(n)
    est = np.empty(n)
    for s in range(0, n, _GAUSS_CHUNK):
        sl = slice(s, min(s + _GAUSS_CHUNK, n))
        mid = 0.5 * (lo[sl] + hi[sl])
        half = 0.5 * (hi[sl] - lo[sl])
        vals = []
        for nodes, weights in (_GAUSS_LO, _GAUSS_HI):
            pts = mid[:, None] + half[:, None] * nodes[None, :]
            vals.append(half * (fn(pts) @ weights))
        out[sl] = vals[1]
        est[sl] = np.abs(vals[1] - vals[0])
    return out, est


def certified_cumulative(
    fn, start: float, points: np.ndarray, error_target: float
) -> tuple[np.ndarray, float]:
    """Cumulative integral of fn from ``start`` through ascending ``points``.

    Each gap between consecutive abscissae is integrated by the embedded
    Gauss pair; gaps whose error estimate dominates are bisected until the
    summed estimate falls below ``error_target``.  Returns the cumulative
    values and the final summed error estimate.
    """
    points = np.asarray(points, dtype=float)
    if len(points) == 0:
        return np.array([]), 0.0
    edges_lo = np.concatenate(([start], points[:-1]))
    vals, errs = _gauss_pair(fn, edges_lo, points)
    # Re-integrate offending gaps on progressively finer uniform panelings
    # until the summed estimate meets the target.
    for depth in range(1, 13):
        if float(errs.sum()) <= error_target:
            break
        bad = np.flatnonzero(errs > error_target / max(len(errs), 1))
        if len(bad) == 0:
            break
        panels = 1 << depth
        for i in bad:
            sub = np.linspace(edges_lo[i], points[i], panels + 1)
            v, e = _gauss_pair(fn, sub[:-1], sub[1:])
            vals[i] = float(v.sum())
            errs[i] = float(e.sum())
    return np.cumsum(vals), float(errs.sum())


# ---------------------------------------------------------------------------
# Catalog front door
# ---------------------------------------------------------------------------

CATALOG_NAMES = ("gaussian", "semicircle", "poisson", "lognormal", "kesten-mckay", "qgaussian")


def make_spec(name: str, **params: float) -> DistributionSpec:
    """Build a catalog law by name."""
    if name == "gaussian":
        return gaussian_spec()
    if name == "semicircle":
        return semicircle_spec()
    if name == "poisson":
        return standardized_poisson(int(params["n"]))
    if name == "lognormal":
        return shifted_lognormal(float(params["sigma"]))
    if name == "kesten-mckay":
        return kesten_mckay(float(params["t"]))
    if name == "qgaussian":
        return qgaussian_spec(float(params["q"]))
    raise DomainError(f"unknown distribution {name!r}; catalog: {', '.join(CATALOG_NAMES)}")
