"""Explicit free-subgroup and free-semigroup witnesses on splitting trees.

Witness constructions take the minimal powers at their thresholds:
p = ceil((k+1)/2) for an elliptic pair (conjugating by h = g1*g2),
p = k+1 for elliptic/hyperbolic, q = 3k+1 for hyperbolic pairs with small
axis overlap, p = 3 for large overlap.  Every witness is certified by a
bounded-depth normal-form check: no nontrivial alternating word in the
witnesses of letter budget <= depth evaluates to the identity (semigroup
claims: all positive words up to the depth stay pairwise distinct).  The
certificate refutes non-freeness up to that depth; it is a guard, not a
proof; the freeness statements themselves come from acylindricity, the
certificate only guards the computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .splitting import SplittingSpec
from .tree import (ElementClass, TreeVertex, VertexRegion, act, axis_window,
                   classify, fixed_set, geodesic, on_axis, region_diameter,
                   region_distance, t_set)
from .words import Word


class WitnessInputError(ValueError):
    """Inputs do not satisfy the case hypotheses (misclassified, intersecting
    fixed sets, coinciding axes, ...)."""


class CertificationFailure(RuntimeError):
    """A certificate check failed; never ignored silently."""


@dataclass(frozen=True)
class FreenessWitness:
    case: str
    generators: Tuple[Word, Word]
    power_used: int
    claim: str  # free_product_rank2 | free_subgroup_rank2 | free_semigroup_rank2
    certificate_depth: int
    certified: bool
    branch: Optional[str] = None
    failure: Optional[str] = None

    def to_json_dict(self) -> dict:
        return {
            "case": self.case,
            "claim": self.claim,
            "generators": [str(w) for w in self.generators],
            "power_used": self.power_used,
            "certificate_depth": self.certificate_depth,
            "certified": self.certified,
            "branch": self.branch,
            "failure": self.failure,
        }


@dataclass(frozen=True)
class OverlapReport:
    diameter: float  # windowed lower bound; -inf when the axes are disjoint
    threshold: int  # 3k
    branch: str  # "small" | "large"
    exhaustive: bool
    crossing: Optional[TreeVertex]

    def to_json_dict(self) -> dict:
        diam = self.diameter
        return {
            "diameter": None if diam == -math.inf else int(diam),
            "threshold": self.threshold,
            "branch": self.branch,
            "exhaustive": self.exhaustive,
            "crossing": None if self.crossing is None else str(self.crossing),
        }


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


def _syllable_cost(exp: int, order: Optional[int]) -> int:
    if order is None:
        return abs(exp)
    return min(exp % order, order - exp % order)


def _exponent_range(order: Optional[int], budget: int) -> List[int]:
    if order is not None:
        return [e for e in range(1, order) if _syllable_cost(e, order) <= budget]
    return [e for mag in range(1, budget + 1) for e in (mag, -mag)]


def certify_rank2_free(spec: SplittingSpec, w1: Word, w2: Word,
                       depth: int = 6) -> Tuple[bool, Optional[str]]:
    """Check that no nontrivial alternating word in w1, w2 of letter budget
    <= depth evaluates to the identity.

    Syllable exponents run over nontrivial powers (mod the element order when
    finite), so this is the right nontriviality check both for the
    free-product claim <w1> * <w2> and, for infinite-order witnesses, for
    rank-2 free subgroups.  Returns (ok, failing word or None).
    """
    if spec.is_trivial(w1) or spec.is_trivial(w2):
        return False, "a witness generator is trivial"
    witnesses = (w1, w2)
    orders = (spec.element_order(w1), spec.element_order(w2))

    def descend(prefix: Word, last: Optional[int], budget: int) -> Optional[str]:
        for i in (0, 1):
            if i == last:
                continue
            for exp in _exponent_range(orders[i], budget):
                cost = _syllable_cost(exp, orders[i])
                word = prefix * (witnesses[i] ** exp)
                if spec.is_trivial(word):
                    return f"W{i + 1}^{exp} after {prefix}"
                bad = descend(word, i, budget - cost)
                if bad is not None:
                    return bad
        return None

    bad = descend(Word(), None, depth)
    return (bad is None), bad


def certify_free_semigroup(spec: SplittingSpec, w1: Word, w2: Word,
                           depth: int = 6) -> Tuple[bool, Optional[str]]:
    """All positive words of length <= depth in (w1, w2) are pairwise distinct."""
    seen = {spec.normal_form(Word()).key(): ""}
    frontier: List[Tuple[str, Word]] = [("", Word())]
    for _ in range(depth):
        nxt = []
        for label, word in frontier:
            for tag, w in (("1", w1), ("2", w2)):
                lab2, word2 = label + tag, word * w
                key = spec.normal_form(word2).key()
                if key in seen:
                    return False, f"W{lab2} collides with W{seen[key]}"
                seen[key] = lab2
                nxt.append((lab2, word2))
        frontier = nxt
    return True, None


# ---------------------------------------------------------------------------
# case hypotheses helpers
# ---------------------------------------------------------------------------


def _default_radius(*words: Word) -> int:
    longest = max((w.letter_length() for w in words), default=1)
    return 2 * longest * 2 + 4


def _require_elliptic(spec: SplittingSpec, w: Word, name: str) -> ElementClass:
    cls = classify(spec, w)
    if cls.is_hyperbolic:
        raise WitnessInputError(f"{name} = {w} is hyperbolic; an elliptic element is required")
    return cls


def _require_hyperbolic(spec: SplittingSpec, w: Word, name: str) -> ElementClass:
    cls = classify(spec, w)
    if not cls.is_hyperbolic:
        raise WitnessInputError(f"{name} = {w} is elliptic; a hyperbolic element is required")
    return cls


def same_axis(spec: SplittingSpec, h1: Word, h2: Word,
              spread: int = 8) -> bool:
    """Windowed test for Axis(h1) = Axis(h2).

    Samples three Axis(h1) points spread 2*spread*tau(h1) apart; if all stay
    on Axis(h2), the axes share a segment at least that long (axes are convex),
    which we take as equality.  Distinct axes overlap in a bounded segment, so
    a large spread makes this decisive for the elements under test.
    """
    c1 = _require_hyperbolic(spec, h1, "h1")
    c2 = _require_hyperbolic(spec, h2, "h2")
    p1 = c1.witness_vertex
    for j in (-spread, 0, spread):
        q = act(spec, h1 ** j, p1)
        if not on_axis(spec, h2, c2.tau, q):
            return False
    return True


def _axis_intersection(spec: SplittingSpec, h1: Word, c1: ElementClass,
                       h2: Word, c2: ElementClass,
                       radius: int) -> Tuple[float, Optional[TreeVertex], VertexRegion]:
    """Windowed Axis(h1) ∩ Axis(h2) around the projection of Axis(h1) onto
    Axis(h2).  If the axes meet, the projection lies in the intersection, so
    a window of radius R certifies any diameter verdict below R."""
    p1, p2 = c1.witness_vertex, c2.witness_vertex
    q_star = None
    for v in geodesic(spec, p1, p2):
        if on_axis(spec, h2, c2.tau, v):
            q_star = v
            break
    assert q_star is not None  # p2 itself is on Axis(h2)
    if not on_axis(spec, h1, c1.tau, q_star):
        empty = VertexRegion(q_star, radius, (), True)
        return -math.inf, q_star, empty
    ax1 = axis_window(spec, h1, q_star, radius)
    members = tuple(v for v in ax1.members if on_axis(spec, h2, c2.tau, v))
    region = VertexRegion(q_star, radius, members, True)
    return region_diameter(spec, region), q_star, region


def overlap_report(spec: SplittingSpec, k: int, h1: Word, h2: Word,
                   radius: Optional[int] = None) -> OverlapReport:
    """Diameter of Axis(h1) ∩ Axis(h2) and the 3k branch selection."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    c1 = _require_hyperbolic(spec, h1, "h1")
    c2 = _require_hyperbolic(spec, h2, "h2")
    if same_axis(spec, h1, h2, spread=max(3 * k + 2, 8)):
        raise WitnessInputError(
            f"h1 = {h1} and h2 = {h2} share an axis on the inspection window; "
            "the overlap branch is undetermined")
    if radius is None:
        radius = 3 * k + c1.tau + c2.tau + 6
    diam, crossing, region = _axis_intersection(spec, h1, c1, h2, c2, radius)
    branch = "small" if diam <= 3 * k else "large"
    exhaustive = diam == -math.inf or radius > 3 * k
    return OverlapReport(diam, 3 * k, branch, exhaustive, crossing)


# ---------------------------------------------------------------------------
# witness constructions, case by case
# ---------------------------------------------------------------------------


def witness_elliptic_pair(spec: SplittingSpec, k: int, g1: Word, g2: Word,
                          depth: int = 6,
                          radius: Optional[int] = None) -> FreenessWitness:
    """Elliptic pair with disjoint fixed sets: witnesses (g1, h^p g1 h^-p)
    with h = g1 g2 and p = ceil((k+1)/2)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    _require_elliptic(spec, g1, "g1")
    _require_elliptic(spec, g2, "g2")
    if radius is None:
        radius = _default_radius(g1, g2)
    f1 = fixed_set(spec, g1, radius=radius)
    f2 = fixed_set(spec, g2, radius=radius)
    if region_distance(spec, f1, f2) < 1:
        raise WitnessInputError(
            "the windowed fixed sets of g1 and g2 intersect; "
            "Fix(g1) ∩ Fix(g2) = ∅ is required")
    p = (k + 2) // 2
    h = g1 * g2
    conj = (h ** p) * g1 * (h ** p).inverse()
    ok, fail = certify_rank2_free(spec, g1, conj, depth)
    return FreenessWitness("elliptic_elliptic", (g1, conj), p,
                           "free_product_rank2", depth, ok, failure=fail)


def witness_elliptic_hyperbolic(spec: SplittingSpec, k: int, g: Word, h: Word,
                                depth: int = 6) -> FreenessWitness:
    """Elliptic g, hyperbolic h: witnesses (g, h^p g h^-p) with p = k+1."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    _require_elliptic(spec, g, "g")
    _require_hyperbolic(spec, h, "h")
    p = k + 1
    conj = (h ** p) * g * (h ** p).inverse()
    ok, fail = certify_rank2_free(spec, g, conj, depth)
    return FreenessWitness("elliptic_hyperbolic", (g, conj), p,
                           "free_product_rank2", depth, ok, failure=fail)


def witness_hyperbolic_pair(spec: SplittingSpec, k: int, h1: Word, h2: Word,
                            depth: int = 6,
                            radius: Optional[int] = None) -> FreenessWitness:
    """Hyperbolic pair with distinct axes.

    Small overlap (diam <= 3k): witnesses (h1^q, h2^q) with q = 3k+1.
    Large overlap: p = 3 and one of (h2, h1^p h2 h1^-p), (h1, h2^p h1 h2^-p),
    trying the h1-conjugates-h2 order first.
    """
    rep = overlap_report(spec, k, h1, h2, radius)
    if rep.branch == "small":
        q = 3 * k + 1
        pair = (h1 ** q, h2 ** q)
        ok, fail = certify_rank2_free(spec, pair[0], pair[1], depth)
        return FreenessWitness("hyperbolic_small_overlap", pair, q,
                               "free_subgroup_rank2", depth, ok,
                               branch="small", failure=fail)
    p = 3
    for conjugator, seed, label in ((h1, h2, "h1 conjugates h2"),
                                    (h2, h1, "h2 conjugates h1")):
        pair = (seed, (conjugator ** p) * seed * (conjugator ** p).inverse())
        ok, fail = certify_rank2_free(spec, pair[0], pair[1], depth)
        if ok:
            return FreenessWitness("hyperbolic_large_overlap", pair, p,
                                   "free_subgroup_rank2", depth, True,
                                   branch=f"large ({label})")
    raise CertificationFailure(
        f"neither large-overlap conjugation order certified at depth {depth} "
        f"for h1 = {h1}, h2 = {h2}")


def semigroup_witness(spec: SplittingSpec, h1: Word, h2: Word,
                      depth: int = 6) -> FreenessWitness:
    """Free-semigroup witness: either (h1, h2) or (h1^-1, h2), whichever set
    of positive words stays distinct to the certificate depth."""
    _require_hyperbolic(spec, h1, "h1")
    _require_hyperbolic(spec, h2, "h2")
    if same_axis(spec, h1, h2):
        raise WitnessInputError(
            f"h1 = {h1} and h2 = {h2} share an axis; distinct axes are required")
    failures = []
    for pair, label in (((h1, h2), "direct"), ((h1.inverse(), h2), "inverted")):
        ok, fail = certify_free_semigroup(spec, pair[0], pair[1], depth)
        if ok:
            return FreenessWitness("semigroup", pair, 1, "free_semigroup_rank2",
                                   depth, True, branch=label)
        failures.append(f"{label}: {fail}")
    raise CertificationFailure(
        "both orientation pairs failed the positive-word distinctness check: "
        + "; ".join(failures))


# ---------------------------------------------------------------------------
# translation-length and overlap verifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductTranslationReport:
    tau_product: int
    distance_of_fixed_sets: int


def product_translation_length(spec: SplittingSpec, g1: Word, g2: Word,
                           radius: Optional[int] = None) -> ProductTranslationReport:
    """For elliptic g1, g2 with disjoint fixed sets, returns tau(g1 g2) and
    d(Fix(g1), Fix(g2)); the caller asserts tau = 2 d."""
    _require_elliptic(spec, g1, "g1")
    _require_elliptic(spec, g2, "g2")
    if radius is None:
        radius = _default_radius(g1, g2)
    f1 = fixed_set(spec, g1, radius=radius)
    f2 = fixed_set(spec, g2, radius=radius)
    d = region_distance(spec, f1, f2)
    if d < 1:
        raise WitnessInputError("fixed sets intersect on the window")
    if d == math.inf:
        raise WitnessInputError("a fixed set is empty on the window; enlarge the radius")
    tau = classify(spec, g1 * g2).tau
    return ProductTranslationReport(tau, int(d))


def verify_disjoint_tsets(spec: SplittingSpec, g1: Word, g2: Word,
                          radius: int = 8, max_power: int = 6) -> bool:
    """Windowed check of T(g1) ∩ T(g2) = ∅ (the rank-2 free product hypothesis)."""
    _require_elliptic(spec, g1, "g1")
    _require_elliptic(spec, g2, "g2")
    t1 = t_set(spec, g1, radius=radius, max_power=max_power)
    t2 = t_set(spec, g2, radius=radius, max_power=max_power)
    return region_distance(spec, t1, t2) >= 1


def witness_power_pair(spec: SplittingSpec, h1: Word, h2: Word, n: int,
                          depth: int = 6) -> FreenessWitness:
    """If diam(Axis(h1) ∩ Axis(h2)) < n min(tau1, tau2), the powers
    (h1^n, h2^n) generate a rank-2 free subgroup; certified witness."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c1 = _require_hyperbolic(spec, h1, "h1")
    c2 = _require_hyperbolic(spec, h2, "h2")
    if same_axis(spec, h1, h2, spread=max(n + 2, 8)):
        raise WitnessInputError(
            f"h1 = {h1} and h2 = {h2} share an axis: the overlap is unbounded")
    bound = n * min(c1.tau, c2.tau)
    radius = bound + c1.tau + c2.tau + 6
    diam, _, _ = _axis_intersection(spec, h1, c1, h2, c2, radius)
    if not diam < bound:
        raise WitnessInputError(
            f"axis overlap diameter {diam} is not < n*min(tau) = {bound}")
    pair = (h1 ** n, h2 ** n)
    ok, fail = certify_rank2_free(spec, pair[0], pair[1], depth)
    return FreenessWitness("hyperbolic_small_overlap", pair, n,
                           "free_subgroup_rank2", depth, ok, failure=fail)


# ---------------------------------------------------------------------------
# the proof's witness-length bookkeeping
# ---------------------------------------------------------------------------


def witness_length_bound_holds(k: int, diam_bound=1) -> bool:
    """Symbolic check that the elliptic-branch witness satisfies
    |g2| <= (4k+10) D when |h| <= 4D, |g1| <= 2D and p = ceil((k+1)/2):
    2p * 4D + 2D <= (4k+10) D."""
    p = (k + 2) // 2
    return 2 * p * 4 * diam_bound + 2 * diam_bound <= (4 * k + 10) * diam_bound
