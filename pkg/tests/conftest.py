import random

import pytest

from treegroups.oracles import make_cyclic, make_free
from treegroups.splitting import SplittingSpec
from treegroups.tree import act, ball, tree_distance
from treegroups.words import Word

W = Word.parse


@pytest.fixture(scope="session")
def z2z3():
    return SplittingSpec("free_product", make_cyclic(2, "a", "A"),
                         make_cyclic(3, "b", "B"))


@pytest.fixture(scope="session")
def z3z4():
    return SplittingSpec("free_product", make_cyclic(3, "a", "A"),
                         make_cyclic(4, "b", "B"))


@pytest.fixture(scope="session")
def z2z2():
    return SplittingSpec("free_product", make_cyclic(2, "a", "A"),
                         make_cyclic(2, "b", "B"))


@pytest.fixture(scope="session")
def triv_z5():
    return SplittingSpec("free_product", make_cyclic(1, "t", "A"),
                         make_cyclic(5, "s", "B"))


@pytest.fixture(scope="session")
def f2():
    # F2 = <x> * <y>, the rank-2 free group as a free product of two Z's
    return SplittingSpec("free_product", make_free(1, ["x"], "A"),
                         make_free(1, ["y"], "B"))


@pytest.fixture(scope="session")
def klein():
    # <a, b | a^2 = b^2>: amalgam of two Z's over index-2 subgroups (a line)
    return SplittingSpec("amalgam", make_free(1, ["a"], "A"),
                         make_free(1, ["b"], "B"),
                         ["t"], [W("a^2")], [W("b^2")])


@pytest.fixture(scope="session")
def f2_amalgam():
    # F2 *_<a>=<c> F2, isomorphic to F3; the edge subgroup is malnormal
    return SplittingSpec("amalgam", make_free(2, ["a", "b"], "A"),
                         make_free(2, ["c", "d"], "B"),
                         ["t"], [W("a")], [W("c")])


def random_word(rng: random.Random, gen_names, max_len: int,
                max_exp: int = 2) -> Word:
    letters = []
    for _ in range(rng.randint(0, max_len)):
        exp = rng.choice([e for e in range(-max_exp, max_exp + 1) if e])
        letters.append((rng.choice(gen_names), exp))
    return Word.of(letters)


def random_elliptic(spec, rng: random.Random, max_conj_len: int = 3) -> Word:
    """A random nontrivial conjugate of a factor element (always elliptic)."""
    for _ in range(200):
        side = rng.choice(["A", "B"])
        factor = spec.factor(side)
        s = random_word(rng, factor.gen_names, 2)
        if factor.is_identity(s):
            continue
        conj = random_word(rng, spec.gen_names, max_conj_len)
        return conj * s * conj.inverse()
    raise RuntimeError("could not sample a nontrivial factor element")


def min_displacement_bruteforce(spec, g, center, radius,
                                neighbor_cap=None, extra_vertices=()):
    """Independent oracle: min of d(v, gv) over the BFS window (plus any
    explicitly supplied vertices)."""
    dist, complete = ball(spec, center, radius, neighbor_cap)
    candidates = list(dist) + list(extra_vertices)
    best = min(tree_distance(spec, v, act(spec, g, v)) for v in candidates)
    return best, complete
