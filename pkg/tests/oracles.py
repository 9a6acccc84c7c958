"""Independent brute-force oracles used by the tests.

Everything here is deliberately written from first principles and kept
independent of the package implementations it checks: partitions via naive
recursive insertion, counts via the classical recurrences, distances via
dense pointwise scans.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


# -- counting recurrences ---------------------------------------------------

def bell_numbers(upto: int) -> list[int]:
    """Bell numbers B(1)..B(upto) via the Bell triangle: each row starts
    with the previous row's last entry, and B(n) is the last entry of the
    n-th row."""
    row = [1]
    out = [1]
    for _ in range(upto - 1):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
        out.append(row[-1])
    return out


def catalan_numbers(upto: int) -> list[int]:
    """Catalan numbers C(1)..C(upto) via the convolution recurrence."""
    cat = [1]  # C(0)
    for n in range(upto):
        cat.append(sum(cat[i] * cat[n - i] for i in range(n + 1)))
    return cat[1:]


def double_factorial_odd(m: int) -> int:
    """(2m-1)!! -- the number of pairings of 2m points."""
    out = 1
    for k in range(1, 2 * m, 2):
        out *= k
    return out


# -- naive partition generation --------------------------------------------

def insertion_set_partitions(n: int) -> list[list[list[int]]]:
    """All set partitions of {1..n} by recursive insertion of the largest
    element (order differs from the package's RGS order on purpose)."""
    if n == 0:
        return [[]]
    out = []
    for smaller in insertion_set_partitions(n - 1):
        for i in range(len(smaller)):
            out.append(smaller[:i] + [smaller[i] + [n]] + smaller[i + 1:])
        out.append(smaller + [[n]])
    return out


def naive_pairings(elems: list[int]) -> list[list[tuple[int, int]]]:
    if not elems:
        return [[]]
    first = elems[0]
    out = []
    for j in range(1, len(elems)):
        rest = elems[1:j] + elems[j + 1:]
        for p in naive_pairings(rest):
            out.append([(first, elems[j])] + p)
    return out


def naive_is_noncrossing(blocks: list[list[int]], n: int) -> bool:
    """Direct quadruple scan of the crossing condition."""
    label = {}
    for bi, block in enumerate(blocks):
        for e in block:
            label[e] = bi
    for a, b, c, d in itertools.combinations(range(1, n + 1), 4):
        if label[a] == label[c] and label[b] == label[d] and label[a] != label[b]:
            return False
    return True


def naive_crossings(pairs: list[tuple[int, int]]) -> int:
    count = 0
    for (a1, a2), (b1, b2) in itertools.combinations(pairs, 2):
        lo1, hi1 = min(a1, a2), max(a1, a2)
        lo2, hi2 = min(b1, b2), max(b1, b2)
        if lo1 < lo2 < hi1 < hi2 or lo2 < lo1 < hi2 < hi1:
            count += 1
    return count


# -- independence convolution oracle ----------------------------------------

def independent_sum_moments(mx: list[float], my: list[float]) -> list[float]:
    """Moments of X + Y for independent X, Y from their raw moments, via the
    binomial expansion (m_0 = 1)."""
    n = min(len(mx), len(my))
    ex = [1.0] + list(mx)
    ey = [1.0] + list(my)
    return [
        math.fsum(math.comb(j, i) * ex[i] * ey[j - i] for i in range(j + 1))
        for j in range(1, n + 1)
    ]


# -- dense distance scans ----------------------------------------------------

def grid_scan_distance(
    step_cdf, cont_cdf, atom_locations: np.ndarray, lo: float, hi: float, step: float
) -> tuple[float, float]:
    """Brute-force sup of |F - G| for a step CDF against a continuous one.

    Scans a uniform grid enriched with the atom locations and points just
    below them (the left-limit branch); returns the scan maximum together
    with the Lipschitz window L*step certifying what a pure grid could hide
    between abscissae.
    """
    grid = np.arange(lo, hi, step)
    cand = np.unique(np.concatenate([grid, atom_locations, atom_locations - 1e-12]))
    gap = np.abs(step_cdf(cand) - cont_cdf(cand))
    lipschitz_window = step / math.sqrt(2.0 * math.pi)
    return float(gap.max()), lipschitz_window


def continuous_grid_distance(f_cdf, g_cdf, lo: float, hi: float, step: float) -> float:
    """Dense-grid sup of |F - G| for two continuous CDFs."""
    xs = np.arange(lo, hi + step, step)
    return float(np.abs(f_cdf(xs) - g_cdf(xs)).max())
