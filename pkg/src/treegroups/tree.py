"""The coset tree of a splitting: vertices, distances, classification,
fixed sets, axes, and windowed acylindricity checks.

Vertices are left cosets gA and gB.  A vertex is stored by its side and the
syllable list of the canonical coset representative (normal form with the
tail and any trailing same-side syllable stripped), so vertex equality is
plain structural equality.  Edges join gA and hB exactly when the cosets
intersect; the action is by left multiplication and preserves sides, hence
has no edge inversions.

The tree is infinite (and not even locally finite when a factor has infinite
edge index), so every set-valued operation here is windowed: results carry
the window and an exhaustiveness flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .splitting import SIDE_A, SplittingSpec, Syllable, other_side
from .words import Word


@dataclass(frozen=True)
class TreeVertex:
    side: str
    syllables: Tuple[Syllable, ...]

    def rep_word(self) -> Word:
        out = Word()
        for s in self.syllables:
            out = out * s.word
        return out

    def __str__(self) -> str:
        body = "".join(str(s) for s in self.syllables) or "1"
        return f"{self.side}:{body}"


@dataclass(frozen=True)
class ElementClass:
    verdict: str  # "elliptic" | "hyperbolic"
    tau: int
    witness_vertex: TreeVertex  # a fixed vertex (elliptic) / an axis vertex (hyperbolic)

    @property
    def is_hyperbolic(self) -> bool:
        return self.verdict == "hyperbolic"


@dataclass(frozen=True)
class VertexRegion:
    center: TreeVertex
    radius: int
    members: Tuple[TreeVertex, ...]
    exhaustive_within_radius: bool


class EllipticElementError(ValueError):
    """A hyperbolic element was required."""


def base_vertex(spec: SplittingSpec, side: str = SIDE_A) -> TreeVertex:
    return TreeVertex(side, ())


def vertex_of(spec: SplittingSpec, side: str, w: Word) -> TreeVertex:
    """Canonical vertex for the coset w*<side factor>."""
    nf = spec.normal_form(w)
    syls = nf.syllables
    if syls and syls[-1].side == side:
        syls = syls[:-1]
    return TreeVertex(side, syls)


def act(spec: SplittingSpec, g: Word, v: TreeVertex) -> TreeVertex:
    return vertex_of(spec, v.side, g * v.rep_word())


def tree_distance(spec: SplittingSpec, u: TreeVertex, v: TreeVertex) -> int:
    """Edge-count distance, from the syllable form of rep(u)^-1 rep(v)."""
    t = vertex_of(spec, v.side, u.rep_word().inverse() * v.rep_word())
    m = len(t.syllables)
    if m == 0:
        return 0 if u.side == v.side else 1
    return m + (0 if t.syllables[0].side == u.side else 1)


def geodesic(spec: SplittingSpec, u: TreeVertex, v: TreeVertex) -> List[TreeVertex]:
    """The geodesic vertex chain from u to v (length = distance + 1)."""
    rep_u = u.rep_word()
    t = vertex_of(spec, v.side, rep_u.inverse() * v.rep_word())
    frames: List[Tuple[str, Tuple[Syllable, ...]]] = [(u.side, ())]
    syls = t.syllables
    if syls:
        if syls[0].side != u.side:
            frames.append((other_side(u.side), ()))
        for j in range(1, len(syls) + 1):
            frames.append((other_side(syls[j - 1].side), syls[:j]))
    elif t.side != u.side:
        frames.append((t.side, ()))
    out = []
    for side, prefix in frames:
        w = rep_u
        for s in prefix:
            w = w * s.word
        out.append(vertex_of(spec, side, w))
    return out


def classify(spec: SplittingSpec, g: Word, base: Optional[TreeVertex] = None) -> ElementClass:
    """Elliptic/hyperbolic verdict via the two-displacement criterion.

    g is hyperbolic iff d(v, g^2 v) > d(v, g v), and then
    tau = d(v, g^2 v) - d(v, g v); the verdict does not depend on the base
    vertex.  The witness is a fixed vertex (midpoint of [v, gv]) for elliptic
    g, and an axis vertex for hyperbolic g.
    """
    if base is None:
        base = base_vertex(spec)
    gv = act(spec, g, base)
    ggv = act(spec, g, gv)
    d1 = tree_distance(spec, base, gv)
    d2 = tree_distance(spec, base, ggv)
    if d2 > d1:
        tau = d2 - d1
        off_axis = (d1 - tau) // 2
        witness = geodesic(spec, base, gv)[off_axis]
        return ElementClass("hyperbolic", tau, witness)
    if d1 == 0:
        return ElementClass("elliptic", 0, base)
    witness = geodesic(spec, base, gv)[d1 // 2]
    return ElementClass("elliptic", 0, witness)


# ---------------------------------------------------------------------------
# windowed ball enumeration
# ---------------------------------------------------------------------------


def neighbors(spec: SplittingSpec, v: TreeVertex,
              cap: Optional[int] = None) -> Tuple[List[TreeVertex], bool]:
    """Adjacent vertices (cosets r*t*OtherSide over the edge transversal)."""
    reps, complete = spec.subgroup(v.side).transversal(cap)
    rep_v = v.rep_word()
    out = [vertex_of(spec, other_side(v.side), rep_v * t) for t in reps]
    return out, complete


def ball(spec: SplittingSpec, center: TreeVertex, radius: int,
         neighbor_cap: Optional[int] = None,
         max_vertices: int = 200_000) -> Tuple[Dict[TreeVertex, int], bool]:
    """BFS ball as {vertex: distance}; second value reports completeness."""
    dist = {center: 0}
    frontier = [center]
    complete = True
    for d in range(1, radius + 1):
        nxt = []
        for v in frontier:
            nbs, nb_complete = neighbors(spec, v, neighbor_cap)
            complete = complete and nb_complete
            for nb in nbs:
                if nb not in dist:
                    dist[nb] = d
                    nxt.append(nb)
                    if len(dist) > max_vertices:
                        return dist, False
        frontier = nxt
    return dist, complete


def _sorted_members(spec: SplittingSpec, base: TreeVertex,
                    vertices: Iterable[TreeVertex]) -> Tuple[TreeVertex, ...]:
    return tuple(sorted(vertices,
                        key=lambda v: (tree_distance(spec, base, v), v.side, str(v))))


# ---------------------------------------------------------------------------
# fixed sets, T-sets, axes
# ---------------------------------------------------------------------------


def _factor_element(spec: SplittingSpec, side: str, w: Word) -> Optional[Word]:
    """Canonical factor element equal to w, or None if w is not in the factor."""
    nf = spec.normal_form(w)
    factor = spec.factor(side)
    tail = nf.tail_image_a if side == SIDE_A else spec.sub_b.embed(nf.tail)
    if not nf.syllables:
        return factor.canonical(tail)
    if len(nf.syllables) == 1 and nf.syllables[0].side == side:
        return factor.multiply(nf.syllables[0].word, tail)
    return None


def fixed_set(spec: SplittingSpec, g: Word, base: Optional[TreeVertex] = None,
              radius: int = 8, neighbor_cap: Optional[int] = 16) -> VertexRegion:
    """Fix(g) intersected with ball(base, radius).

    Exhaustive except when g is the identity on a non-locally-finite tree or
    a conjugator solver reports an infinite solution family (flagged).
    Fixed-point sets of nontrivial elliptic elements are connected subtrees,
    so they are explored by BFS over fixed neighbors from the point of Fix(g)
    closest to the base.
    """
    if base is None:
        base = base_vertex(spec)
    if spec.is_trivial(g):
        dist, complete = ball(spec, base, radius, neighbor_cap)
        return VertexRegion(base, radius, _sorted_members(spec, base, dist), complete)
    cls = classify(spec, g, base)
    if cls.is_hyperbolic:
        return VertexRegion(base, radius, (), True)
    chain = geodesic(spec, base, cls.witness_vertex)
    start = None
    start_dist = None
    for i, v in enumerate(chain):
        if act(spec, g, v) == v:
            start, start_dist = v, i
            break
    assert start is not None, "midpoint of [v, gv] must be fixed for elliptic g"
    if start_dist > radius:
        return VertexRegion(base, radius, (), True)

    exhaustive = True
    seen: Set[TreeVertex] = {start}
    members: List[TreeVertex] = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            x = _factor_element(spec, v.side, v.rep_word().inverse() * g * v.rep_word())
            assert x is not None, "fixed vertex must conjugate g into its factor"
            sols, complete = spec.subgroup(v.side).conjugator_cosets(x, neighbor_cap)
            exhaustive = exhaustive and complete
            rep_v = v.rep_word()
            for t in sols:
                nb = vertex_of(spec, other_side(v.side), rep_v * t)
                if nb in seen:
                    continue
                seen.add(nb)
                if tree_distance(spec, base, nb) <= radius:
                    members.append(nb)
                    nxt.append(nb)
        frontier = nxt
    return VertexRegion(base, radius, _sorted_members(spec, base, members), exhaustive)


def t_set(spec: SplittingSpec, g: Word, base: Optional[TreeVertex] = None,
          radius: int = 8, max_power: int = 6,
          neighbor_cap: Optional[int] = 16) -> VertexRegion:
    """Union of Fix(g^n) over 1 <= n <= max_power with g^n nontrivial.

    Fix(g^-n) = Fix(g^n), so positive powers suffice.  The region is flagged
    exhaustive only when every window was exhaustive and g has finite order
    covered by max_power.
    """
    if max_power < 1:
        raise ValueError("max_power must be >= 1")
    if base is None:
        base = base_vertex(spec)
    order = spec.element_order(g)
    members: Set[TreeVertex] = set()
    exhaustive = True
    acc = Word()
    for n in range(1, max_power + 1):
        acc = acc * g
        if spec.is_trivial(acc):
            continue
        region = fixed_set(spec, acc, base, radius, neighbor_cap)
        members.update(region.members)
        exhaustive = exhaustive and region.exhaustive_within_radius
    powers_covered = order is not None and max_power >= order - 1
    return VertexRegion(base, radius, _sorted_members(spec, base, members),
                        exhaustive and powers_covered)


def axis_window(spec: SplittingSpec, h: Word, base: Optional[TreeVertex] = None,
                radius: int = 8) -> VertexRegion:
    """Axis(h) intersected with ball(base, radius); errors on elliptic h.

    The axis is the set of vertices moved exactly tau(h); it is tiled by
    h-translates of one fundamental segment, so the window is exact.
    """
    if base is None:
        base = base_vertex(spec)
    cls = classify(spec, h, base)
    if not cls.is_hyperbolic:
        raise EllipticElementError(f"element {h} is elliptic; it has no axis")
    tau = cls.tau
    p = cls.witness_vertex
    segment = geodesic(spec, p, act(spec, h, p))[:-1]
    d0 = tree_distance(spec, base, p)
    members: Set[TreeVertex] = set()
    for direction in (h, h.inverse()):
        shift = Word()
        k = 0
        while k * tau - tau - d0 <= radius:
            for q in segment:
                qq = vertex_of(spec, q.side, shift * q.rep_word())
                if tree_distance(spec, base, qq) <= radius:
                    members.add(qq)
            shift = shift * direction
            k += 1
    return VertexRegion(base, radius, _sorted_members(spec, base, members), True)


def on_axis(spec: SplittingSpec, h: Word, tau: int, v: TreeVertex) -> bool:
    """Exact membership test: v is on Axis(h) iff it is moved exactly tau."""
    return tree_distance(spec, v, act(spec, h, v)) == tau


# ---------------------------------------------------------------------------
# diameters and acylindricity
# ---------------------------------------------------------------------------


def region_diameter(spec: SplittingSpec, region: VertexRegion):
    """Diameter of the member set; -inf for an empty region."""
    if not region.members:
        return -math.inf
    best = 0
    vs = region.members
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            d = tree_distance(spec, vs[i], vs[j])
            if d > best:
                best = d
    return best


def region_distance(spec: SplittingSpec, r1: VertexRegion, r2: VertexRegion):
    """Min distance between two windowed sets; +inf if either is empty."""
    if not r1.members or not r2.members:
        return math.inf
    return min(tree_distance(spec, u, v) for u in r1.members for v in r2.members)


def fix_diameter_lb(spec: SplittingSpec, g: Word, base: Optional[TreeVertex] = None,
                    radius: int = 8, neighbor_cap: Optional[int] = 16):
    """Certified lower bound for diam Fix(g): the windowed diameter.

    Returns -inf ("no fixed points") when the window is empty, in particular
    for hyperbolic g.
    """
    return region_diameter(spec, fixed_set(spec, g, base, radius, neighbor_cap))


@dataclass(frozen=True)
class AcylindricityCheck:
    verdict: str  # "falsified" | "consistent"
    k: int
    word_length: int
    radius: int
    witness: Optional[Word]
    witness_diameter: Optional[int]
    certified: bool  # structural certificate (trivial edge stabilizers)
    reason: str

    @property
    def falsified(self) -> bool:
        return self.verdict == "falsified"


def enumerate_words(gen_names: Sequence[str], max_len: int) -> Iterator[Word]:
    """All words of letter length <= max_len over the symmetrized alphabet,
    in shortlex order, skipping immediate cancellations."""
    alphabet = [(g, 1) for g in gen_names] + [(g, -1) for g in gen_names]
    alphabet.sort(key=lambda u: (gen_names.index(u[0]), 0 if u[1] > 0 else 1))
    frontier: List[Tuple] = [()]
    yield Word()
    for _ in range(max_len):
        nxt = []
        for units in frontier:
            for a in alphabet:
                if units and units[-1][0] == a[0] and units[-1][1] == -a[1]:
                    continue
                w2 = units + (a,)
                nxt.append(w2)
                yield Word.of(w2)
        frontier = nxt


def check_acylindricity(spec: SplittingSpec, k: int, word_length: int = 6,
                        radius: int = 8,
                        neighbor_cap: Optional[int] = 16) -> AcylindricityCheck:
    """One-sided windowed check of k-acylindricity.

    Enumerates elliptic elements among words of letter length <= word_length
    and falsifies with a witness if some windowed fixed set has diameter > k.
    "consistent" is not a proof, except for trivial edge subgroups, where
    every nontrivial elliptic element fixes a single vertex (factors of a
    free product are malnormal) and the verdict is certified for every k >= 0.
    """
    if k < 0 or word_length < 0 or radius < 0:
        raise ValueError("k, word_length and radius must be nonnegative")
    trivial_edge = all(im.is_empty for im in spec.sub_a.image_words)
    if trivial_edge:
        return AcylindricityCheck(
            "consistent", k, word_length, radius, None, None, True,
            "trivial edge stabilizers: every nontrivial elliptic element "
            "fixes exactly one vertex, so the action is 0-acylindrical")
    base = base_vertex(spec)
    seen = set()
    for w in enumerate_words(spec.gen_names, word_length):
        nf = spec.normal_form(w)
        if nf.is_trivial:
            continue
        key = nf.key()
        if key in seen:
            continue
        seen.add(key)
        cls = classify(spec, w, base)
        if cls.is_hyperbolic:
            continue
        diam = fix_diameter_lb(spec, w, base, radius, neighbor_cap)
        if diam != -math.inf and diam > k:
            return AcylindricityCheck(
                "falsified", k, word_length, radius, w, int(diam), True,
                f"elliptic witness {w} has windowed fixed-set diameter {diam} > {k}")
    return AcylindricityCheck(
        "consistent", k, word_length, radius, None, None, False,
        f"no elliptic word of length <= {word_length} violates the bound "
        f"within radius {radius} (not a proof)")
