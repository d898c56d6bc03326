"""Base-group oracles: finite cyclic, finite multiplication table, Z^n, free.

Every oracle works on :class:`~treegroups.words.Word` values over its own
generators and exposes a canonical form with an O(length) identity test:
residue (cyclic), table index (finite table), exponent vector (free abelian),
freely reduced word (free).  Exponents are plain Python integers, so powers
never overflow.

Designated subgroups carry the extra structure amalgams need: membership,
decomposition over the subgroup generators, canonical left-coset
representatives, transversal enumeration, and a "which conjugators push this
element into the subgroup" solver used for fixed-point sets on the coset tree.
"""

from __future__ import annotations

import itertools
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple

from .words import Generator, Word, WordError, valid_gen_name

# A subgroup element expressed over the subgroup's abstract generators.
CWord = Tuple[Tuple[int, int], ...]


class OracleError(ValueError):
    """Invalid oracle construction or misuse."""


_MISS = object()  # cache sentinel (None is a valid cached value)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, u, v) with u*a + v*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


# ---------------------------------------------------------------------------
# free-word utilities (unit-letter level)
# ---------------------------------------------------------------------------

Unit = Tuple[str, int]  # exponent is +1 or -1


def word_units(w: Word) -> Tuple[Unit, ...]:
    out: List[Unit] = []
    for name, exp in w.letters:
        step = 1 if exp > 0 else -1
        out.extend((name, step) for _ in range(abs(exp)))
    return tuple(out)


def units_word(units: Sequence[Unit]) -> Word:
    return Word.of(units)


def invert_units(units: Sequence[Unit]) -> Tuple[Unit, ...]:
    return tuple((n, -e) for n, e in reversed(units))


def cyclic_decompose(units: Sequence[Unit]) -> Tuple[Tuple[Unit, ...], Tuple[Unit, ...]]:
    """Split a reduced unit word as prefix * core * prefix^-1 with core cyclically reduced."""
    units = tuple(units)
    lo, hi = 0, len(units)
    while hi - lo >= 2 and units[lo][0] == units[hi - 1][0] and units[lo][1] == -units[hi - 1][1]:
        lo += 1
        hi -= 1
    return units[:lo], units[lo:hi]


def primitive_root(core: Sequence[Unit]) -> Tuple[Unit, ...]:
    """Smallest unit word r with core = r^k (core must be cyclically reduced)."""
    core = tuple(core)
    n = len(core)
    for p in range(1, n + 1):
        if n % p == 0 and core[:p] * (n // p) == core:
            return core[:p]
    return core


# ---------------------------------------------------------------------------
# designated subgroups
# ---------------------------------------------------------------------------


class DesignatedSubgroup:
    """A subgroup of an oracle with decidable membership and coset reps.

    ``image_words`` are the canonical images of the abstract subgroup
    generators inside the ambient oracle; ``decompose`` writes a member over
    those generators (as a CWord), which is how amalgam tails cross sides.
    """

    def __init__(self, oracle: "GroupOracle", image_words: Sequence[Word]):
        self.oracle = oracle
        self.image_words = tuple(oracle.canonical(w) for w in image_words)

    def contains(self, x: Word) -> bool:
        raise NotImplementedError

    def decompose(self, x: Word) -> CWord:
        raise NotImplementedError

    def coset_rep(self, x: Word) -> Word:
        """Canonical representative of the left coset x*H."""
        raise NotImplementedError

    def index(self) -> Optional[int]:
        """Subgroup index, or None when infinite."""
        raise NotImplementedError

    def transversal(self, cap: Optional[int] = None) -> Tuple[List[Word], bool]:
        """Canonical coset reps (possibly truncated); second value = complete."""
        raise NotImplementedError

    def conjugator_cosets(self, x: Word, cap: Optional[int] = None) -> Tuple[List[Word], bool]:
        """All transversal reps t with t^-1 x t in the subgroup.

        Returns (reps, complete).  Default implementation scans the
        transversal, which is exact whenever the index is finite.
        """
        reps, complete = self.transversal(cap)
        o = self.oracle
        hits = [t for t in reps if self.contains(o.canonical(x.conjugated_by(t)))]
        return hits, complete

    def embed(self, cw: CWord) -> Word:
        """Image in the ambient oracle of an abstract subgroup word."""
        out = Word()
        for idx, exp in cw:
            out = out * (self.image_words[idx] ** exp)
        return self.oracle.canonical(out)


class _ResidueSubgroup(DesignatedSubgroup):
    """Subgroup of Z/n (n >= 1) or Z (n = 0), generated by exponent residues."""

    def __init__(self, oracle: "GroupOracle", image_words: Sequence[Word], modulus: int):
        super().__init__(oracle, image_words)
        self.modulus = modulus  # 0 means the infinite cyclic ambient group
        self.residues = [oracle._exponent(w) for w in self.image_words]
        d = modulus
        for r in self.residues:
            d = gcd(d, r)
        self.d = d  # subgroup = <g^d>; d == 0 means the trivial subgroup of Z
        # Bezout coefficients: d = c0*modulus + sum(c_i * residues_i)
        coeffs = [0] * len(self.residues)
        g = modulus
        for i, r in enumerate(self.residues):
            g2, u, v = _xgcd(g, r)
            for j in range(i):
                coeffs[j] *= u
            coeffs[i] = v
            g = g2
        self._coeffs = coeffs

    def _exp(self, x: Word) -> int:
        return self.oracle._exponent(self.oracle.canonical(x))

    def contains(self, x: Word) -> bool:
        e = self._exp(x)
        if self.d == 0:
            return e == 0
        return e % self.d == 0

    def decompose(self, x: Word) -> CWord:
        e = self._exp(x)
        if self.d == 0:
            if e != 0:
                raise OracleError(f"{x} is not in the designated subgroup")
            return ()
        if e % self.d != 0:
            raise OracleError(f"{x} is not in the designated subgroup")
        m = e // self.d
        out = tuple((i, c * m) for i, c in enumerate(self._coeffs) if c * m != 0)
        return out

    def coset_rep(self, x: Word) -> Word:
        e = self._exp(x)
        if self.d == 0:
            return self.oracle._from_exponent(e)
        return self.oracle._from_exponent(e % self.d)

    def index(self) -> Optional[int]:
        if self.d == 0:
            return None if self.modulus == 0 else self.modulus
        return self.d

    def transversal(self, cap: Optional[int] = None) -> Tuple[List[Word], bool]:
        idx = self.index()
        if idx is not None:
            reps = [self.oracle._from_exponent(j) for j in range(idx)]
            if cap is not None and len(reps) > cap:
                return reps[:cap], False
            return reps, True
        # trivial subgroup of Z: enumerate 0, 1, -1, 2, -2, ...
        cap = cap if cap is not None else 16
        reps = [self.oracle._from_exponent(0)]
        j = 1
        while len(reps) < cap:
            reps.append(self.oracle._from_exponent(j))
            if len(reps) < cap:
                reps.append(self.oracle._from_exponent(-j))
            j += 1
        return reps, False

    def conjugator_cosets(self, x: Word, cap: Optional[int] = None) -> Tuple[List[Word], bool]:
        # abelian ambient group: t^-1 x t = x for every t
        if self.contains(x):
            return self.transversal(cap)
        return [], True


class _TableSubgroup(DesignatedSubgroup):
    def __init__(self, oracle: "TableOracle", image_words: Sequence[Word]):
        super().__init__(oracle, image_words)
        gens = [oracle._index_of(w) for w in self.image_words]
        table = oracle.table
        inv = oracle._inv
        decomp: dict[int, CWord] = {0: ()}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for gi, g in enumerate(gens):
                    for step, tgt in ((1, table[a][g]), (-1, table[a][inv[g]])):
                        if tgt not in decomp:
                            decomp[tgt] = decomp[a] + ((gi, step),)
                            nxt.append(tgt)
            frontier = nxt
        self._decomp = decomp

    def contains(self, x: Word) -> bool:
        return self.oracle._index_of(self.oracle.canonical(x)) in self._decomp

    def decompose(self, x: Word) -> CWord:
        i = self.oracle._index_of(self.oracle.canonical(x))
        if i not in self._decomp:
            raise OracleError(f"{x} is not in the designated subgroup")
        return self._decomp[i]

    def coset_rep(self, x: Word) -> Word:
        o = self.oracle
        xi = o._index_of(o.canonical(x))
        best = min(o.table[xi][h] for h in self._decomp)
        return o._from_index(best)

    def index(self) -> Optional[int]:
        return self.oracle.order() // len(self._decomp)

    def transversal(self, cap: Optional[int] = None) -> Tuple[List[Word], bool]:
        o = self.oracle
        reps = []
        seen = set()
        for i in range(o.order()):
            w = o._from_index(i)
            r = self.coset_rep(w)
            if r.letters not in seen:
                seen.add(r.letters)
                reps.append(r)
        if cap is not None and len(reps) > cap:
            return reps[:cap], False
        return reps, True


class _LatticeSubgroup(DesignatedSubgroup):
    """Sublattice of Z^n given by generator vectors, via integer row reduction."""

    def __init__(self, oracle: "FreeAbelianOracle", image_words: Sequence[Word]):
        super().__init__(oracle, image_words)
        n = oracle.rank
        k = len(self.image_words)
        rows = [list(oracle._vector(w)) + unit for w, unit in
                zip(self.image_words, ([0] * i + [1] + [0] * (k - i - 1) for i in range(k)))]
        # integer row echelon (Hermite-style) on the first n columns,
        # transform tracked in the trailing k columns
        pivots: List[Tuple[int, int]] = []  # (row, col)
        r = 0
        for col in range(n):
            piv = None
            for i in range(r, k):
                if rows[i][col] != 0:
                    piv = i
                    break
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            for i in range(r + 1, k):
                while rows[i][col] != 0:
                    q = rows[r][col] // rows[i][col]
                    rows[r] = [a - q * b for a, b in zip(rows[r], rows[i])]
                    rows[r], rows[i] = rows[i], rows[r]
            if rows[r][col] < 0:
                rows[r] = [-a for a in rows[r]]
            pivots.append((r, col))
            r += 1
        self.rows = rows
        self.pivots = pivots
        self.n = n
        self.k = k

    def _reduce(self, vec: List[int], collect: bool = False):
        coeffs = []
        v = list(vec)
        for r, c in self.pivots:
            q = v[c] // self.rows[r][c]
            if q:
                v = [a - q * b for a, b in zip(v, self.rows[r][:self.n])]
            coeffs.append((r, q))
        return v, coeffs

    def contains(self, x: Word) -> bool:
        v = list(self.oracle._vector(self.oracle.canonical(x)))
        for r, c in self.pivots:
            if v[c] % self.rows[r][c] != 0:
                return False
            q = v[c] // self.rows[r][c]
            v = [a - q * b for a, b in zip(v, self.rows[r][:self.n])]
        return all(a == 0 for a in v)

    def decompose(self, x: Word) -> CWord:
        v = list(self.oracle._vector(self.oracle.canonical(x)))
        gen_coeffs = [0] * self.k
        for r, c in self.pivots:
            if v[c] % self.rows[r][c] != 0:
                raise OracleError(f"{x} is not in the designated subgroup")
            q = v[c] // self.rows[r][c]
            if q:
                v = [a - q * b for a, b in zip(v, self.rows[r][:self.n])]
                for j in range(self.k):
                    gen_coeffs[j] += q * self.rows[r][self.n + j]
        if any(a != 0 for a in v):
            raise OracleError(f"{x} is not in the designated subgroup")
        return tuple((j, c) for j, c in enumerate(gen_coeffs) if c)

    def coset_rep(self, x: Word) -> Word:
        v, _ = self._reduce(list(self.oracle._vector(self.oracle.canonical(x))))
        return self.oracle._from_vector(v)

    def index(self) -> Optional[int]:
        if len(self.pivots) < self.n:
            return None
        out = 1
        for r, c in self.pivots:
            out *= self.rows[r][c]
        return out

    def transversal(self, cap: Optional[int] = None) -> Tuple[List[Word], bool]:
        if self.index() is not None:
            diag = {c: self.rows[r][c] for r, c in self.pivots}
            ranges = [range(diag[c]) for c in range(self.n)]
            reps = []
            for combo in itertools.product(*ranges):
                v, _ = self._reduce(list(combo))
                reps.append(self.oracle._from_vector(v))
                if cap is not None and len(reps) >= cap:
                    return reps, False
            return reps, True
        cap = cap if cap is not None else 32
        reps: List[Word] = []
        seen = set()
        for shell in itertools.count(0):
            for combo in itertools.product(range(-shell, shell + 1), repeat=self.n):
                if max((abs(a) for a in combo), default=0) != shell:
                    continue
                v, _ = self._reduce(list(combo))
                key = tuple(v)
                if key not in seen:
                    seen.add(key)
                    reps.append(self.oracle._from_vector(v))
                    if len(reps) >= cap:
                        return reps, False

    def conjugator_cosets(self, x: Word, cap: Optional[int] = None) -> Tuple[List[Word], bool]:
        if self.contains(x):
            return self.transversal(cap)
        return [], True


class _FreeCyclicSubgroup(DesignatedSubgroup):
    """Cyclic subgroup <w> of a free group of rank >= 2."""

    def __init__(self, oracle: "FreeOracle", image_words: Sequence[Word]):
        super().__init__(oracle, image_words)
        if len(self.image_words) > 1:
            raise OracleError(
                "designated subgroups of free factors must be cyclic "
                f"(got {len(self.image_words)} generators)")
        self.w = self.image_words[0] if self.image_words else Word()
        self.w_units = word_units(self.w)
        self.prefix, self.core = cyclic_decompose(self.w_units)
        self.trivial = not self.w_units
        self._pow_cache: dict = {}
        self._rep_cache: dict = {}

    def _power_of_w(self, x: Word) -> Optional[int]:
        if x.is_empty:
            return 0
        if self.trivial:
            return None
        hit = self._pow_cache.get(x.letters, _MISS)
        if hit is not _MISS:
            return hit
        out = None
        xu = word_units(x)
        lw = len(self.core)
        extra = len(xu) - 2 * len(self.prefix)
        if extra > 0 and extra % lw == 0:
            k = extra // lw
            for cand in (k, -k):
                if self.oracle.canonical(self.w ** cand) == x:
                    out = cand
                    break
        self._pow_cache[x.letters] = out
        return out

    def contains(self, x: Word) -> bool:
        return self._power_of_w(self.oracle.canonical(x)) is not None

    def decompose(self, x: Word) -> CWord:
        k = self._power_of_w(self.oracle.canonical(x))
        if k is None:
            raise OracleError(f"{x} is not in the designated subgroup")
        return ((0, k),) if k else ()

    def coset_rep(self, x: Word) -> Word:
        x = self.oracle.canonical(x)
        if self.trivial:
            return x
        hit = self._rep_cache.get(x.letters)
        if hit is not None:
            return hit
        # x * w^k can only shrink while the power eats into x: a bounded
        # window around k = 0 surely contains every shortlex minimum
        span = (len(word_units(x)) + len(self.w_units)) // max(1, len(self.core)) + 2
        candidates = []
        w_inv = self.w.inverse()
        cur = x
        for _ in range(span + 1):
            candidates.append(cur)
            cur = cur * self.w
        cur = x * w_inv
        for _ in range(span):
            candidates.append(cur)
            cur = cur * w_inv
        min_len = min(c.letter_length() for c in candidates)
        shortest = [c for c in candidates if c.letter_length() == min_len]
        best = min(shortest, key=self.oracle._shortlex_key)
        self._rep_cache[x.letters] = best
        return best

    def index(self) -> Optional[int]:
        return None

    def transversal(self, cap: Optional[int] = None) -> Tuple[List[Word], bool]:
        cap = cap if cap is not None else 16
        reps: List[Word] = []
        for w in self.oracle.enumerate_shortlex():
            if self.coset_rep(w) == w:
                reps.append(w)
                if len(reps) >= cap:
                    break
        return reps, False

    def conjugator_cosets(self, x: Word, cap: Optional[int] = None) -> Tuple[List[Word], bool]:
        x = self.oracle.canonical(x)
        if self.trivial:
            return [], True
        if x.is_empty:
            return self.transversal(cap)
        ux, cx = cyclic_decompose(word_units(x))
        lw = len(self.core)
        if not cx or len(cx) % lw != 0:
            return [], True
        k = len(cx) // lw
        rho = primitive_root(self.core)
        s = lw // len(rho)
        reps: List[Word] = []
        seen = set()
        for target in (self.core * k, invert_units(self.core) * k):
            hit = None
            for i in range(len(cx)):
                if cx[i:] + cx[:i] == target:
                    hit = i
                    break
            if hit is None:
                continue
            base = units_word(ux + cx[:hit] + invert_units(self.prefix))
            rho_w = units_word(self.prefix + rho + invert_units(self.prefix))
            for m in range(s):
                t = self.coset_rep(base * (rho_w ** m))
                if t.letters not in seen:
                    seen.add(t.letters)
                    reps.append(t)
        for t in reps:
            assert self.contains(x.conjugated_by(t))
        return reps, True


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


class GroupOracle:
    kind: str

    def __init__(self, gens: Sequence[str], group_id: str = "G"):
        for g in gens:
            if not valid_gen_name(g):
                raise OracleError(f"invalid generator name: {g!r}")
        if len(set(gens)) != len(gens):
            raise OracleError(f"duplicate generator names: {gens}")
        self.gen_names = tuple(gens)
        self.group_id = group_id
        self.generators = tuple(Generator(g, group_id) for g in gens)

    def _check(self, w: Word) -> Word:
        for name in w.gen_names():
            if name not in self.gen_names:
                raise WordError(
                    f"generator {name!r} is foreign to {self.kind} group {self.group_id!r}")
        return w

    # interface -------------------------------------------------------------
    def canonical(self, w: Word) -> Word:
        raise NotImplementedError

    def is_identity(self, w: Word) -> bool:
        return self.canonical(w).is_empty

    def multiply(self, u: Word, v: Word) -> Word:
        return self.canonical(u * v)

    def invert(self, u: Word) -> Word:
        return self.canonical(u.inverse())

    def order(self) -> Optional[int]:
        """Group order; None when infinite."""
        return None

    def element_order(self, w: Word) -> Optional[int]:
        raise NotImplementedError

    def enumerate_elements(self) -> Iterator[Word]:
        raise OracleError(f"{self.kind} group is not finitely enumerable")

    def designated_subgroup(self, image_words: Sequence[Word]) -> DesignatedSubgroup:
        raise NotImplementedError

    def trivial_subgroup(self) -> DesignatedSubgroup:
        return self.designated_subgroup([])


class CyclicOracle(GroupOracle):
    kind = "cyclic"

    def __init__(self, n: int, gen: str, group_id: str = "G"):
        if n < 1:
            raise OracleError(f"cyclic order must be >= 1, got {n}")
        super().__init__([gen], group_id)
        self.n = n

    def _exponent(self, w: Word) -> int:
        self._check(w)
        return sum(e for _, e in w.letters) % self.n

    def _from_exponent(self, e: int) -> Word:
        e %= self.n
        return Word.gen(self.gen_names[0], e) if e else Word()

    def canonical(self, w: Word) -> Word:
        return self._from_exponent(self._exponent(w))

    def order(self) -> int:
        return self.n

    def element_order(self, w: Word) -> int:
        e = self._exponent(w)
        return self.n // gcd(self.n, e) if e else 1

    def enumerate_elements(self) -> Iterator[Word]:
        for e in range(self.n):
            yield self._from_exponent(e)

    def designated_subgroup(self, image_words: Sequence[Word]) -> DesignatedSubgroup:
        return _ResidueSubgroup(self, image_words, self.n)


class TableOracle(GroupOracle):
    """Finite group by multiplication table; element 0 is the identity.

    Validated eagerly: closure, identity, inverses, and associativity
    (exhaustively up to order 64, on 512 random triples beyond that).
    """

    kind = "table"

    def __init__(self, elements: Sequence[str], table: Sequence[Sequence[int]],
                 gens: Optional[Sequence[str]] = None, group_id: str = "G"):
        m = len(elements)
        if m < 1 or len(set(elements)) != m:
            raise OracleError("table elements must be nonempty and distinct")
        if len(table) != m or any(len(row) != m for row in table):
            raise OracleError("multiplication table must be square of the group order")
        for row in table:
            for v in row:
                if not (0 <= v < m):
                    raise OracleError(f"table entry {v} out of range (closure fails)")
        for i in range(m):
            if table[0][i] != i or table[i][0] != i:
                raise OracleError("element 0 is not an identity")
        inv = [None] * m
        for i in range(m):
            for j in range(m):
                if table[i][j] == 0 and table[j][i] == 0:
                    inv[i] = j
                    break
            if inv[i] is None:
                raise OracleError(f"element {elements[i]!r} has no inverse")
        if m <= 64:
            triples = itertools.product(range(m), repeat=3)
        else:
            import random
            rng = random.Random(0)
            triples = ((rng.randrange(m), rng.randrange(m), rng.randrange(m))
                       for _ in range(512))
        for a, b, c in triples:
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise OracleError("multiplication table is not associative")
        names = gens if gens is not None else [e for e in elements[1:]] or [elements[0]]
        super().__init__(list(elements), group_id)
        self.letter_names = tuple(names)
        self.table = [list(row) for row in table]
        self._inv = inv
        self._idx = {name: i for i, name in enumerate(elements)}

    def _index_of(self, w: Word) -> int:
        self._check(w)
        acc = 0
        for name, exp in w.letters:
            i = self._idx[name]
            if exp < 0:
                i = self._inv[i]
                exp = -exp
            o = self._elt_order(i)
            for _ in range(exp % o):
                acc = self.table[acc][i]
        return acc

    def _elt_order(self, i: int) -> int:
        acc, o = i, 1
        while acc != 0:
            acc = self.table[acc][i]
            o += 1
        return o

    def _from_index(self, i: int) -> Word:
        return Word.gen(self.gen_names[i]) if i else Word()

    def canonical(self, w: Word) -> Word:
        return self._from_index(self._index_of(w))

    def order(self) -> int:
        return len(self.gen_names)

    def element_order(self, w: Word) -> int:
        i = self._index_of(w)
        return 1 if i == 0 else self._elt_order(i)

    def enumerate_elements(self) -> Iterator[Word]:
        for i in range(self.order()):
            yield self._from_index(i)

    def designated_subgroup(self, image_words: Sequence[Word]) -> DesignatedSubgroup:
        return _TableSubgroup(self, image_words)


class FreeAbelianOracle(GroupOracle):
    kind = "free_abelian"

    def __init__(self, rank: int, gens: Sequence[str], group_id: str = "G"):
        if rank < 1 or len(gens) != rank:
            raise OracleError(f"free abelian rank {rank} needs exactly {rank} generators")
        super().__init__(gens, group_id)
        self.rank = rank
        self._pos = {g: i for i, g in enumerate(gens)}

    def _vector(self, w: Word) -> Tuple[int, ...]:
        self._check(w)
        v = [0] * self.rank
        for name, exp in w.letters:
            v[self._pos[name]] += exp
        return tuple(v)

    def _from_vector(self, v: Sequence[int]) -> Word:
        return Word.of([(g, e) for g, e in zip(self.gen_names, v) if e])

    def canonical(self, w: Word) -> Word:
        return self._from_vector(self._vector(w))

    def element_order(self, w: Word) -> Optional[int]:
        return 1 if self.canonical(w).is_empty else None

    def designated_subgroup(self, image_words: Sequence[Word]) -> DesignatedSubgroup:
        return _LatticeSubgroup(self, image_words)


class FreeOracle(GroupOracle):
    kind = "free"

    def __init__(self, rank: int, gens: Sequence[str], group_id: str = "G"):
        if rank < 1 or len(gens) != rank:
            raise OracleError(f"free rank {rank} needs exactly {rank} generators")
        super().__init__(gens, group_id)
        self.rank = rank
        self._pos = {g: i for i, g in enumerate(gens)}

    def canonical(self, w: Word) -> Word:
        self._check(w)
        return w  # Word construction already freely reduces

    def _exponent(self, w: Word) -> int:
        # rank-1 helper: total exponent
        self._check(w)
        return sum(e for _, e in w.letters)

    def _from_exponent(self, e: int) -> Word:
        return Word.gen(self.gen_names[0], e)

    def _shortlex_key(self, w: Word):
        units = word_units(w)
        return (len(units), tuple((self._pos[n], 0 if e > 0 else 1) for n, e in units))

    def enumerate_shortlex(self) -> Iterator[Word]:
        """All reduced words in shortlex order (infinite)."""
        alphabet = [(g, 1) for g in self.gen_names] + [(g, -1) for g in self.gen_names]
        alphabet.sort(key=lambda u: (self._pos[u[0]], 0 if u[1] > 0 else 1))
        frontier: List[Tuple[Unit, ...]] = [()]
        while frontier:
            nxt = []
            for units in frontier:
                yield units_word(units)
                for a in alphabet:
                    if units and units[-1][0] == a[0] and units[-1][1] == -a[1]:
                        continue
                    nxt.append(units + (a,))
            frontier = nxt

    def element_order(self, w: Word) -> Optional[int]:
        return 1 if self.canonical(w).is_empty else None

    def designated_subgroup(self, image_words: Sequence[Word]) -> DesignatedSubgroup:
        if self.rank == 1:
            return _ResidueSubgroup(self, image_words, 0)
        return _FreeCyclicSubgroup(self, image_words)


# ---------------------------------------------------------------------------
# factories (the spec's constructor surface)
# ---------------------------------------------------------------------------


def make_cyclic(n: int, gen: str, group_id: str = "G") -> CyclicOracle:
    return CyclicOracle(n, gen, group_id)


def make_free_abelian(rank: int, gens: Sequence[str], group_id: str = "G") -> FreeAbelianOracle:
    return FreeAbelianOracle(rank, gens, group_id)


def make_free(rank: int, gens: Sequence[str], group_id: str = "G") -> FreeOracle:
    return FreeOracle(rank, gens, group_id)


def make_table(elements: Sequence[str], table: Sequence[Sequence[int]],
               gens: Optional[Sequence[str]] = None, group_id: str = "G") -> TableOracle:
    return TableOracle(elements, table, gens, group_id)


def oracle_multiply(oracle: GroupOracle, u: Word, v: Word) -> Word:
    """Canonical-form product in the given base group."""
    return oracle.multiply(u, v)
