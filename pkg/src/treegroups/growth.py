"""Weighted word-metric growth: exact ball counts, entropy estimates,
analytic roots, and the semigroup lower bound.

Counting is exact integer arithmetic over the lattice of achievable radii
(weights are converted to Fractions; floats convert exactly through
as_integer_ratio), so DP counts can be compared verbatim against brute-force
enumeration.  The analytic roots are solved by bisection with geometric
bracket growth, and the semigroup lower bound by golden-section search on its
unimodal objective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(*x.as_integer_ratio())
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact weight")


def _check_weights(l1, l2) -> Tuple[Fraction, Fraction]:
    f1, f2 = _as_fraction(l1), _as_fraction(l2)
    if f1 <= 0 or f2 <= 0:
        raise ValueError(f"weights must be positive, got ({l1}, {l2})")
    return f1, f2


@dataclass(frozen=True)
class WeightedGenSet:
    """Two free(-semigroup) generators with positive length weights; a
    generator and its inverse share a weight."""
    weights: Tuple[float, float]

    def __post_init__(self):
        _check_weights(*self.weights)


@dataclass(frozen=True)
class BallCountSeries:
    radii: Tuple[float, ...]
    counts: Tuple[int, ...]
    exact: bool
    weights: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if len(self.radii) != len(self.counts):
            raise ValueError("radii and counts must have equal length")
        if any(c2 < c1 for c1, c2 in zip(self.counts, self.counts[1:])):
            raise ValueError("counts must be nondecreasing in the radius")
        if self.counts and self.counts[0] < 1:
            raise ValueError("count at the smallest radius must be >= 1")


@dataclass(frozen=True)
class EntropyEstimate:
    lower: float
    upper: float
    method: str  # dp_exact | bfs_window | analytic_root
    radius_used: float
    residual: Optional[float] = None

    def to_json_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "method": self.method,
                "radius_used": self.radius_used, "residual": self.residual}


# ---------------------------------------------------------------------------
# exact counting
# ---------------------------------------------------------------------------


def ball_count_free_group(l1, l2, radius) -> int:
    """Number of elements of F2 = <g1, g2> of weighted length <= radius.

    DP over reduced words stratified by the generator class of the last
    letter: a word with i letters of g1-type and j of g2-type weighs
    i*l1 + j*l2, and appending a letter of the same class can be done one
    way (no cancellation), of the other class two ways.
    """
    w1, w2 = _check_weights(l1, l2)
    r = _as_fraction(radius)
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    imax = int(r / w1)
    total = 1
    # table[(i, j)] = (#reduced words ending in a g1-class letter, g2-class)
    table: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for i in range(imax + 1):
        jmax = int((r - i * w1) / w2)
        for j in range(jmax + 1):
            if i == j == 0:
                continue
            c1 = c2 = 0
            if i >= 1:
                if (i - 1, j) == (0, 0):
                    c1 = 2
                else:
                    p1, p2 = table[(i - 1, j)]
                    c1 = p1 + 2 * p2
            if j >= 1:
                if (i, j - 1) == (0, 0):
                    c2 = 2
                else:
                    p1, p2 = table[(i, j - 1)]
                    c2 = 2 * p1 + p2
            table[(i, j)] = (c1, c2)
            total += c1 + c2
    return total


def ball_count_free_semigroup(l1, l2, radius) -> int:
    """Number of positive words in (g1, g2) of weighted length <= radius,
    the empty word included: sum of C(i+j, i) over i*l1 + j*l2 <= radius."""
    w1, w2 = _check_weights(l1, l2)
    r = _as_fraction(radius)
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    total = 0
    imax = int(r / w1)
    for i in range(imax + 1):
        jmax = int((r - i * w1) / w2)
        for j in range(jmax + 1):
            total += math.comb(i + j, i)
    return total


def ball_series_free_group(l1, l2, radii: Sequence[float]) -> BallCountSeries:
    counts = tuple(ball_count_free_group(l1, l2, r) for r in radii)
    return BallCountSeries(tuple(float(r) for r in radii), counts, True,
                           (float(l1), float(l2)))


def ball_series_free_semigroup(l1, l2, radii: Sequence[float]) -> BallCountSeries:
    counts = tuple(ball_count_free_semigroup(l1, l2, r) for r in radii)
    return BallCountSeries(tuple(float(r) for r in radii), counts, True,
                           (float(l1), float(l2)))


# ---------------------------------------------------------------------------
# entropy from counts
# ---------------------------------------------------------------------------


def entropy_from_counts(series: BallCountSeries) -> EntropyEstimate:
    """Bracketed slope estimate of (1/R) log #B(R).

    The bracket holds the two-point slope over the last third of the radii
    and the global slope; constant counts give entropy 0 exactly.
    """
    if len(series.radii) < 3:
        raise ValueError("need at least 3 sample radii")
    radii, counts = series.radii, series.counts
    method = "dp_exact" if series.exact else "bfs_window"
    if counts[-1] == counts[0]:
        return EntropyEstimate(0.0, 0.0, method, radii[-1])
    if radii[-1] <= radii[0]:
        raise ValueError("radii must increase")
    global_slope = (math.log(counts[-1]) - math.log(counts[0])) / (radii[-1] - radii[0])
    cutoff = radii[0] + 2.0 * (radii[-1] - radii[0]) / 3.0
    i0 = next(i for i, r in enumerate(radii) if r >= cutoff)
    if i0 == len(radii) - 1:
        i0 -= 1
    tail_slope = (math.log(counts[-1]) - math.log(counts[i0])) / (radii[-1] - radii[i0])
    lo, hi = sorted((tail_slope, global_slope))
    return EntropyEstimate(lo, hi, method, radii[-1])


def monotonicity_check(series1: BallCountSeries, series2: BallCountSeries) -> bool:
    """Ball nesting: with pointwise-comparable weights, the series of the
    smaller weights dominates; True iff count1(R) >= count2(R) on the shared
    radii.  Incomparable or missing weight vectors are rejected."""
    if series1.weights is None or series2.weights is None:
        raise ValueError("both series must carry their weight vectors")
    w1, w2 = series1.weights, series2.weights
    le = all(a <= b for a, b in zip(w1, w2))
    ge = all(a >= b for a, b in zip(w1, w2))
    if not (le or ge):
        raise ValueError(f"incomparable weight vectors {w1} vs {w2}")
    common = sorted(set(series1.radii) & set(series2.radii))
    if not common:
        raise ValueError("the series share no sample radii")
    c1 = dict(zip(series1.radii, series1.counts))
    c2 = dict(zip(series2.radii, series2.counts))
    return all(c1[r] >= c2[r] for r in common)


# ---------------------------------------------------------------------------
# analytic roots
# ---------------------------------------------------------------------------


def _bisect_increasing(f, lo: float, hi: float, rel_tol: float = 1e-15) -> float:
    """Root of increasing f with f(lo) <= 0 <= f(hi), to relative tolerance.

    The default runs the bisection down to machine precision: the defining
    equations have O(10) derivatives at their roots, and reported residuals
    must stay below 1e-12."""
    for _ in range(260):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rel_tol * max(abs(mid), 1e-300):
            return mid
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _solve(f, scale: float) -> float:
    lo = 1e-9
    while f(lo) > 0.0:
        lo /= 16.0
        if lo < 1e-300:
            raise ArithmeticError("no positive root bracket found")
    hi = scale
    while f(hi) < 0.0:
        hi *= 2.0
        if hi > 1e300:
            raise ArithmeticError("no positive root bracket found")
    return _bisect_increasing(f, lo, hi)


def free_group_entropy_root(l1, l2) -> float:
    """The unique E > 0 with (e^{E l1} - 1)(e^{E l2} - 1) = 4: the entropy of
    the weighted free group of rank 2."""
    f1, f2 = _check_weights(l1, l2)
    a, b = float(f1), float(f2)
    f = lambda e: math.expm1(e * a) * math.expm1(e * b) - 4.0
    return _solve(f, 1.0 / min(a, b))


def free_group_equation_residual(root: float, l1, l2) -> float:
    return math.expm1(root * float(l1)) * math.expm1(root * float(l2)) - 4.0


def semigroup_entropy_root(l1, l2) -> float:
    """The unique E > 0 with e^{-E l1} + e^{-E l2} = 1: the exact growth rate
    of the weighted free semigroup of rank 2 (independent oracle for the
    lower bound)."""
    f1, f2 = _check_weights(l1, l2)
    a, b = float(f1), float(f2)
    f = lambda e: 1.0 - math.exp(-e * a) - math.exp(-e * b)
    return _solve(f, 1.0 / min(a, b))


def semigroup_equation_residual(root: float, l1, l2) -> float:
    return 1.0 - math.exp(-root * float(l1)) - math.exp(-root * float(l2))


def analytic_root_estimate(kind: str, l1, l2) -> EntropyEstimate:
    if kind == "group":
        root = free_group_entropy_root(l1, l2)
        res = free_group_equation_residual(root, l1, l2)
    elif kind == "semigroup":
        root = semigroup_entropy_root(l1, l2)
        res = semigroup_equation_residual(root, l1, l2)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return EntropyEstimate(root, root, "analytic_root", math.inf, res)


# ---------------------------------------------------------------------------
# the semigroup entropy lower bound
# ---------------------------------------------------------------------------


def bcg_objective(a: float, l1, l2) -> float:
    """((1+a) log(1+a) - a log a) / (l1 + a l2) for a > 0."""
    if a <= 0.0:
        raise ValueError("the objective is defined for a > 0")
    num = (1.0 + a) * math.log1p(a) - a * math.log(a)
    return num / (float(l1) + a * float(l2))


def bcg_lower_bound(l1, l2, tol: float = 1e-10) -> float:
    """sup over a in (0, inf) of the semigroup-entropy objective, by
    golden-section search after geometric bracket growth (the objective is
    strictly unimodal, vanishing at both ends)."""
    _check_weights(l1, l2)
    f = lambda a: bcg_objective(a, l1, l2)
    lo, mid, hi = 1e-8, 1.0, 2.0
    while f(hi) > f(mid):
        lo, mid, hi = mid, hi, hi * 2.0
        if hi > 1e12:
            raise ArithmeticError("objective failed to turn over")
    while f(lo) > f(mid):
        lo, mid, hi = lo / 2.0, lo, mid
        if lo < 1e-300:
            raise ArithmeticError("objective failed to turn over")
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
    return f(0.5 * (lo + hi))
