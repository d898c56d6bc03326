"""Free products A*B and amalgams A*_C B with alternating-syllable normal forms.

An element is written uniquely as s_1 s_2 ... s_m * c where the s_i are
canonical coset representatives strictly alternating between the two factors
(never in the edge subgroup) and c lies in the edge subgroup C (trivial for
free products).  The transversal choice is deterministic per factor kind, so
normal forms, tree vertices and certificates are reproducible bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .oracles import (CWord, DesignatedSubgroup, GroupOracle, OracleError,
                      make_cyclic, make_free, make_free_abelian, make_table)
from .words import Word, WordError

SIDE_A = "A"
SIDE_B = "B"


def other_side(side: str) -> str:
    return SIDE_B if side == SIDE_A else SIDE_A


class SpecError(ValueError):
    """Malformed or unsupported splitting specification."""


class HnnNotSupportedError(SpecError):
    """HNN extensions are an extension point, not part of the supported core."""


@dataclass(frozen=True)
class Syllable:
    side: str
    word: Word

    def __str__(self) -> str:
        return f"[{self.word}]"


@dataclass(frozen=True)
class NormalForm:
    syllables: Tuple[Syllable, ...]
    tail: CWord  # over the abstract edge generators
    tail_image_a: Word  # canonical image of the tail in factor A

    @property
    def is_trivial(self) -> bool:
        return not self.syllables and self.tail_image_a.is_empty

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return (self.syllables == other.syllables
                and self.tail_image_a == other.tail_image_a)

    def __hash__(self) -> int:
        return hash((self.syllables, self.tail_image_a))

    def as_word(self) -> Word:
        """Reassemble a plain word (tail through the A-side embedding)."""
        out = Word()
        for s in self.syllables:
            out = out * s.word
        return out * self.tail_image_a

    def __str__(self) -> str:
        parts = [str(s) for s in self.syllables]
        if not self.tail_image_a.is_empty:
            parts.append(f"[{self.tail_image_a}]")
        return "".join(parts) if parts else "[1]"

    def key(self) -> Tuple:
        """Hashable canonical key (for dedup tables)."""
        return (tuple((s.side, s.word.letters) for s in self.syllables),
                self.tail_image_a.letters)


class SplittingSpec:
    """A free or amalgamated product of two supported base groups."""

    def __init__(self, kind: str, factor_a: GroupOracle, factor_b: GroupOracle,
                 edge_gens: Sequence[str] = (), into_a: Sequence[Word] = (),
                 into_b: Sequence[Word] = (), declared_k: Optional[int] = None):
        if kind not in ("free_product", "amalgam"):
            if kind == "hnn":
                raise HnnNotSupportedError(
                    "HNN extensions are not supported (Britton normal forms are "
                    "an extension point); only free_product and amalgam kinds exist")
            raise SpecError(f"unknown splitting kind: {kind!r}")
        self.kind = kind
        self.factor_a = factor_a
        self.factor_b = factor_b
        self.declared_k = declared_k
        if declared_k is not None and declared_k < 0:
            raise SpecError("declared_k must be a nonnegative integer")

        overlap = set(factor_a.gen_names) & set(factor_b.gen_names)
        if overlap:
            raise SpecError(f"factor generator names collide: {sorted(overlap)}")

        if kind == "free_product":
            if edge_gens or into_a or into_b:
                raise SpecError("free products take no edge data")
            self.edge_gens: Tuple[str, ...] = ()
            self.sub_a = factor_a.trivial_subgroup()
            self.sub_b = factor_b.trivial_subgroup()
        else:
            if not edge_gens:
                raise SpecError("amalgams need at least one edge generator")
            if len(into_a) != len(edge_gens) or len(into_b) != len(edge_gens):
                raise SpecError("edge generator images must match the generator list")
            used = set(factor_a.gen_names) | set(factor_b.gen_names)
            for g in edge_gens:
                if g in used:
                    raise SpecError(f"edge generator name {g!r} collides with a factor")
            self.edge_gens = tuple(edge_gens)
            self.sub_a = factor_a.designated_subgroup(into_a)
            self.sub_b = factor_b.designated_subgroup(into_b)
            self._check_edge_identification()

        self._side_of: Dict[str, str] = {}
        for g in factor_a.gen_names:
            self._side_of[g] = SIDE_A
        for g in factor_b.gen_names:
            self._side_of[g] = SIDE_B
        self._edge_index = {g: i for i, g in enumerate(self.edge_gens)}
        self._nf_cache: Dict[tuple, NormalForm] = {}

    # -- construction helpers ------------------------------------------------

    def _check_edge_identification(self) -> None:
        """Bounded isomorphism sanity check: short edge words are trivial on
        one side iff trivial on the other (generators and products up to
        length 4)."""
        k = len(self.edge_gens)
        alphabet = [(i, 1) for i in range(k)] + [(i, -1) for i in range(k)]
        words: List[CWord] = [()]
        frontier: List[CWord] = [()]
        for _ in range(4):
            nxt = []
            for cw in frontier:
                for a in alphabet:
                    w2 = cw + (a,)
                    nxt.append(w2)
            words.extend(nxt)
            frontier = nxt
            if len(words) > 5000:
                break
        for cw in words:
            ta = self.sub_a.embed(cw).is_empty
            tb = self.sub_b.embed(cw).is_empty
            if ta != tb:
                raise SpecError(
                    "edge embeddings do not identify isomorphic subgroups "
                    f"(edge word {cw} is trivial on one side only)")

    # -- basic queries ---------------------------------------------------------

    def factor(self, side: str) -> GroupOracle:
        return self.factor_a if side == SIDE_A else self.factor_b

    def subgroup(self, side: str) -> DesignatedSubgroup:
        return self.sub_a if side == SIDE_A else self.sub_b

    def side_of(self, gen_name: str) -> str:
        try:
            return self._side_of[gen_name]
        except KeyError:
            raise WordError(f"generator {gen_name!r} is foreign to this splitting")

    @property
    def gen_names(self) -> Tuple[str, ...]:
        return self.factor_a.gen_names + self.factor_b.gen_names

    def edge_index(self, side: str) -> Optional[int]:
        """Index of the edge subgroup in the given factor (None = infinite)."""
        idx = self.subgroup(side).index()
        if idx is not None:
            return idx
        return self.factor(side).order()  # None stays None

    def parse_word(self, text: str) -> Word:
        """Parse a word, substituting edge-generator letters by their A-images."""
        return self.resolve_word(Word.parse(text))

    def resolve_word(self, w: Word) -> Word:
        out = Word()
        for name, exp in w.letters:
            if name in self._edge_index:
                img = self.sub_a.image_words[self._edge_index[name]]
                out = out * (img ** exp)
            elif name in self._side_of:
                out = out * Word.gen(name, exp)
            else:
                raise WordError(f"generator {name!r} is foreign to this splitting")
        return out

    # -- normal form -----------------------------------------------------------

    def normal_form(self, w: Word) -> NormalForm:
        hit = self._nf_cache.get(w.letters)
        if hit is not None:
            return hit
        resolved = self.resolve_word(w)
        syllables: List[Syllable] = []
        tail: CWord = ()
        for side, piece in self._runs(resolved):
            tail = self._push(syllables, tail, side, piece)
        nf = NormalForm(tuple(syllables), tail, self.sub_a.embed(tail))
        if len(self._nf_cache) < 400_000:
            self._nf_cache[w.letters] = nf
        return nf

    def _runs(self, w: Word):
        """Split a word into maximal same-side runs as factor elements."""
        run: List = []
        run_side = None
        for name, exp in w.letters:
            side = self.side_of(name)
            if side != run_side and run:
                yield run_side, Word.of(run)
                run = []
            run_side = side
            run.append((name, exp))
        if run:
            yield run_side, Word.of(run)

    def _push(self, syllables: List[Syllable], tail: CWord, side: str,
              piece: Word) -> CWord:
        factor = self.factor(side)
        sub = self.subgroup(side)
        y = factor.multiply(sub.embed(tail), piece)
        if syllables and syllables[-1].side == side:
            y = factor.multiply(syllables.pop().word, y)
        if sub.contains(y):
            return sub.decompose(y)
        rep = sub.coset_rep(y)
        rest = factor.multiply(factor.invert(rep), y)
        syllables.append(Syllable(side, rep))
        return sub.decompose(rest)

    def is_trivial(self, w: Word) -> bool:
        return self.normal_form(w).is_trivial

    def equal(self, u: Word, v: Word) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def element_order(self, w: Word, cap: int = 64) -> Optional[int]:
        """Order of w in the whole group (None if infinite or > cap).

        Torsion elements are conjugates of torsion factor elements, so the
        normal-form power walk terminates fast when the order is finite.
        """
        nf = self.normal_form(w)
        if nf.is_trivial:
            return 1
        acc = w
        for n in range(2, cap + 1):
            acc = acc * w
            if self.is_trivial(acc):
                return n
        return None


def normal_form(spec: SplittingSpec, w: Word) -> NormalForm:
    return spec.normal_form(w)


def syllable_length(nf: NormalForm) -> int:
    return len(nf.syllables)


# ---------------------------------------------------------------------------
# elementarity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ElementarityVerdict:
    verdict: str  # elliptic_action | linear_action | non_elementary
    reason: str


def classify_elementarity(spec: SplittingSpec) -> ElementarityVerdict:
    """Structural elementarity of the action on the coset tree.

    Decided from the factor-to-edge indices: any index 1 collapses the tree
    to a bounded star (elliptic); indices (2, 2) make the tree a line.
    """
    ia = spec.edge_index(SIDE_A)
    ib = spec.edge_index(SIDE_B)
    fmt = lambda i: "inf" if i is None else str(i)
    if ia == 1 or ib == 1:
        return ElementarityVerdict(
            "elliptic_action",
            f"a factor equals the edge subgroup (indices {fmt(ia)}, {fmt(ib)}): "
            "the tree is a bounded star with a fixed vertex")
    if ia == 2 and ib == 2:
        return ElementarityVerdict(
            "linear_action",
            "both factor-to-edge indices equal 2: the tree is a line")
    return ElementarityVerdict(
        "non_elementary",
        f"factor-to-edge indices ({fmt(ia)}, {fmt(ib)}): some index >= 3 "
        "and both >= 2, so no invariant point or line exists")


# ---------------------------------------------------------------------------
# JSON loading
# ---------------------------------------------------------------------------


def _oracle_from_decl(decl: dict, group_id: str) -> GroupOracle:
    if not isinstance(decl, dict) or "type" not in decl:
        raise SpecError(f"bad oracle declaration: {decl!r}")
    t = decl["type"]
    try:
        if t == "cyclic":
            (gen,) = decl["gens"]
            return make_cyclic(int(decl["order"]), gen, group_id)
        if t == "free":
            gens = list(decl["gens"])
            return make_free(int(decl.get("rank", len(gens))), gens, group_id)
        if t == "free_abelian":
            gens = list(decl["gens"])
            return make_free_abelian(int(decl.get("rank", len(gens))), gens, group_id)
        if t == "table":
            return make_table(decl["elements"], decl["table"],
                              decl.get("gens"), group_id)
    except (KeyError, ValueError, TypeError) as exc:
        if isinstance(exc, (SpecError, OracleError)):
            raise
        raise SpecError(f"bad {t!r} oracle declaration: {exc}") from exc
    raise SpecError(f"unsupported oracle type: {t!r}")


def spec_from_dict(doc: dict) -> SplittingSpec:
    if not isinstance(doc, dict):
        raise SpecError("splitting spec must be a JSON object")
    kind = doc.get("kind")
    if kind == "hnn":
        raise HnnNotSupportedError(
            "HNN extensions are not supported (Britton normal forms are an "
            "extension point); use kind 'free_product' or 'amalgam'")
    factors = doc.get("factors")
    if not isinstance(factors, list) or len(factors) != 2:
        raise SpecError("splitting spec needs exactly two factors")
    a = _oracle_from_decl(factors[0], "A")
    b = _oracle_from_decl(factors[1], "B")
    edge = doc.get("edge")
    edge_gens: Sequence[str] = ()
    into_a: Sequence[Word] = ()
    into_b: Sequence[Word] = ()
    if edge is not None:
        try:
            edge_gens = list(edge["generators"])
            into_a = [Word.parse(s) for s in edge["into_A"]]
            into_b = [Word.parse(s) for s in edge["into_B"]]
        except (KeyError, TypeError) as exc:
            raise SpecError(f"bad edge declaration: {exc}") from exc
    declared_k = doc.get("declared_k")
    return SplittingSpec(kind, a, b, edge_gens, into_a, into_b, declared_k)


def load_spec(path: str) -> SplittingSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError(f"{path}: not valid JSON ({exc})") from exc
    return spec_from_dict(doc)
