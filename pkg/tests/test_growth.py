import itertools
import math
from fractions import Fraction

import pytest

from treegroups.growth import (BallCountSeries, WeightedGenSet,
                               analytic_root_estimate,
                               ball_count_free_group,
                               ball_count_free_semigroup,
                               ball_series_free_group,
                               ball_series_free_semigroup, bcg_lower_bound,
                               bcg_objective, entropy_from_counts,
                               free_group_entropy_root,
                               free_group_equation_residual,
                               monotonicity_check, semigroup_entropy_root,
                               semigroup_equation_residual)

WEIGHT_GRID = [Fraction(1, 2), Fraction(1), Fraction(2)]


# -- brute-force enumeration oracles (independent of the DP) -------------------

def enumerate_free_group_count(l1, l2, radius) -> int:
    """Count reduced words over {a, A, b, B} of weight <= radius by DFS."""
    l1, l2, radius = Fraction(l1), Fraction(l2), Fraction(radius)
    weights = {"a": l1, "A": l1, "b": l2, "B": l2}
    inverse = {"a": "A", "A": "a", "b": "B", "B": "b"}
    count = 0
    stack = [("", Fraction(0))]
    while stack:
        last, weight = stack.pop()
        count += 1
        for letter, lw in weights.items():
            if last and inverse[last[-1]] == letter:
                continue
            if weight + lw <= radius:
                stack.append((last + letter, weight + lw))
    return count


def enumerate_semigroup_count(l1, l2, radius) -> int:
    l1, l2, radius = Fraction(l1), Fraction(l2), Fraction(radius)
    count = 0
    stack = [Fraction(0)]
    while stack:
        weight = stack.pop()
        count += 1
        for lw in (l1, l2):
            if weight + lw <= radius:
                stack.append(weight + lw)
    return count


# -- exact counting -------------------------------------------------------------

def test_unit_weight_counts():
    assert ball_count_free_group(1, 1, 1) == 5
    for n in range(9):
        assert ball_count_free_group(1, 1, n) == 2 * 3 ** n - 1
        assert ball_count_free_semigroup(1, 1, n) == 2 ** (n + 1) - 1
    assert ball_count_free_semigroup(1, 1, 0) == 1


def test_mixed_weight_counts_frozen_from_enumeration():
    # enumeration oracle values for the (1,2) weights
    assert enumerate_free_group_count(1, 2, 2) == 7
    assert ball_count_free_group(1, 2, 2) == 7
    assert enumerate_semigroup_count(1, 2, 3) == 7
    assert ball_count_free_semigroup(1, 2, 3) == 7


def test_dp_matches_enumeration_on_grid():
    for l1 in WEIGHT_GRID:
        for l2 in WEIGHT_GRID:
            radius = 8 * min(l1, l2)
            assert ball_count_free_group(l1, l2, radius) == \
                enumerate_free_group_count(l1, l2, radius)
            assert ball_count_free_semigroup(l1, l2, radius) == \
                enumerate_semigroup_count(l1, l2, radius)


def test_counts_handle_float_weights_exactly():
    # 0.5 is exactly representable: the float path must agree with Fractions
    assert ball_count_free_group(0.5, 0.5, 4) == ball_count_free_group(
        Fraction(1, 2), Fraction(1, 2), 4)
    assert ball_count_free_group(0.5, 2.0, 4.0) == ball_count_free_group(
        Fraction(1, 2), 2, 4)


def test_count_validation():
    with pytest.raises(ValueError):
        ball_count_free_group(0, 1, 3)
    with pytest.raises(ValueError):
        ball_count_free_semigroup(1, 1, -1)


# -- entropy estimation ----------------------------------------------------------

def test_entropy_estimate_free_group():
    series = ball_series_free_group(1, 1, range(0, 16))
    est = entropy_from_counts(series)
    assert est.method == "dp_exact"
    assert abs(est.lower - math.log(3)) <= 5e-2
    assert abs(est.upper - math.log(3)) <= 5e-2
    assert est.lower <= est.upper


def test_entropy_estimate_semigroup():
    series = ball_series_free_semigroup(1, 1, range(0, 21))
    est = entropy_from_counts(series)
    assert abs(est.lower - math.log(2)) <= 5e-2
    assert abs(est.upper - math.log(2)) <= 5e-2


def test_entropy_constant_counts_is_zero():
    series = BallCountSeries((0.0, 1.0, 2.0, 3.0), (6, 6, 6, 6), True)
    est = entropy_from_counts(series)
    assert est.lower == est.upper == 0.0


def test_entropy_needs_three_radii():
    with pytest.raises(ValueError):
        entropy_from_counts(BallCountSeries((0.0, 1.0), (1, 5), True))


def test_series_validation():
    with pytest.raises(ValueError):
        BallCountSeries((0.0, 1.0, 2.0), (5, 3, 7), True)  # not nondecreasing
    with pytest.raises(ValueError):
        WeightedGenSet((1.0, 0.0))


def test_windowed_series_method_tag():
    series = BallCountSeries((0.0, 1.0, 2.0, 3.0), (1, 5, 17, 53), exact=False)
    assert entropy_from_counts(series).method == "bfs_window"


def test_analytic_agreement_on_weight_grid():
    # |slope estimate - analytic root| <= 5e-2 at R >= 15/min(l)
    for l1 in WEIGHT_GRID:
        for l2 in WEIGHT_GRID:
            step = min(l1, l2)
            radii = [i * step for i in range(int(15 / step) + 1)]
            est = entropy_from_counts(ball_series_free_group(l1, l2, radii))
            root = free_group_entropy_root(l1, l2)
            assert abs(est.lower - root) <= 5e-2
            assert abs(est.upper - root) <= 5e-2


# -- analytic roots ---------------------------------------------------------------

def test_free_group_root_unit_weights():
    root = free_group_entropy_root(1, 1)
    assert abs(root - math.log(3)) <= 1e-10
    assert abs(free_group_equation_residual(root, 1, 1)) <= 1e-12


def test_free_group_root_12_matches_polynomial():
    # (e^E - 1)(e^{2E} - 1) = 4 means t = e^E solves (t-1)^2 (t+1) = 4
    root = free_group_entropy_root(1, 2)
    t = math.exp(root)
    assert abs((t - 1) ** 2 * (t + 1) - 4) <= 1e-10
    assert abs(root - 0.7563) <= 1e-3


def test_semigroup_root_values():
    assert abs(semigroup_entropy_root(1, 1) - math.log(2)) <= 1e-12
    golden = math.log((1 + math.sqrt(5)) / 2)
    assert abs(semigroup_entropy_root(1, 2) - golden) <= 1e-12
    root = semigroup_entropy_root(1, 2)
    assert abs(semigroup_equation_residual(root, 1, 2)) <= 1e-12


def test_root_scaling_covariance():
    base = free_group_entropy_root(1, 1)
    for c in (0.25, 0.5, 3.0, 17.0):
        scaled = free_group_entropy_root(c, c)
        assert abs(scaled - base / c) <= 1e-10 * max(1.0, base / c)
    assert abs(semigroup_entropy_root(3, 3) - math.log(2) / 3) <= 1e-12


def test_root_strictly_decreasing_in_weights():
    grid = [0.5, 1.0, 2.0]
    for l2 in grid:
        roots = [free_group_entropy_root(l1, l2) for l1 in grid]
        assert roots[0] > roots[1] > roots[2]


def test_analytic_root_estimate_wrapper():
    est = analytic_root_estimate("group", 1, 1)
    assert est.method == "analytic_root"
    assert est.lower == est.upper
    assert abs(est.residual) <= 1e-12
    with pytest.raises(ValueError):
        analytic_root_estimate("monoid", 1, 1)


# -- the semigroup lower bound -----------------------------------------------------

def test_bcg_unit_weights_is_log2():
    assert abs(bcg_lower_bound(1, 1) - math.log(2)) <= 1e-12


def test_bcg_below_semigroup_root_on_grid():
    # the sup equals the semigroup growth rate analytically; numerically the
    # two solvers may land on either side by ~1e-12
    for l1 in WEIGHT_GRID:
        for l2 in WEIGHT_GRID:
            bcg = bcg_lower_bound(l1, l2)
            root = semigroup_entropy_root(l1, l2)
            assert bcg <= root + 1e-9
            if l1 == l2:
                assert abs(bcg - root) <= 1e-9
                assert abs(bcg - math.log(2) / l1) <= 1e-9


def test_bcg_objective_unimodal_on_grid():
    # guard for the golden-section search
    for l1, l2 in itertools.product(WEIGHT_GRID, repeat=2):
        values = [bcg_objective(10.0 ** e, l1, l2)
                  for e in [i / 8.0 for i in range(-48, 49)]]
        rises = [i for i in range(1, len(values)) if values[i] > values[i - 1]]
        falls = [i for i in range(1, len(values)) if values[i] < values[i - 1]]
        assert not rises or not falls or max(rises) < min(falls)


def test_bcg_proof_step_inequality():
    # with E the exact semigroup rate, evaluating at a = E*l1 recovers
    # l1 >= (1/E) e^{-E l2}; with l2 <= 6D this is the e^{-6DE}/E bound
    for l1 in WEIGHT_GRID:
        for l2 in WEIGHT_GRID:
            e_star = semigroup_entropy_root(l1, l2)
            assert e_star >= bcg_objective(e_star * float(l1), l1, l2) - 1e-11
            assert float(l1) >= (1.0 / e_star) * math.exp(-e_star * float(l2)) - 1e-11


def test_monotonicity_check():
    s_small = ball_series_free_group(1, 1, range(0, 9))
    s_large = ball_series_free_group(1, 2, range(0, 9))
    assert monotonicity_check(s_small, s_large)
    assert monotonicity_check(s_small, s_small)
    incomparable = ball_series_free_group(2, 1, range(0, 9))
    with pytest.raises(ValueError):
        monotonicity_check(ball_series_free_group(1, 3, range(0, 9)), incomparable)
    with pytest.raises(ValueError):
        monotonicity_check(BallCountSeries((0.0,), (1,), True), s_small)
