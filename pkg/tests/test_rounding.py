"""Grid snapping and bucket rounding.

The snapping rule for q > 2 processes coordinates from the top label
down, so probability mass only ever moves up.  The regression tests pin
a concrete instance where rounding the low labels up instead (zeroing
the top) pushes a feasible solution out of the hull.
"""

import random
from fractions import Fraction as F

import pytest

import oracles
from smcsp.caps import CapExceeded
from smcsp.lp import check_feasible_fractional, lp_value, solve_lp, val
from smcsp.model import Predicate, brute_force_opt, make_instance
from smcsp.randgen import (hvc, random_feasible_solution, random_instance,
                           ternary_chain, vc_edge)
from smcsp.rounding import (bucketed_instance, check_grid_fraction,
                            grid_points, grid_size, integrality_report,
                            perturb, perturb_point, round_solution,
                            verify_perturbation)


# ---------------------------------------------------------------------------
# grid fractions
# ---------------------------------------------------------------------------

def test_grid_fraction_must_be_unit_fraction():
    assert check_grid_fraction(F(1, 6)) == F(1, 6)
    for bad in (F(2, 5), F(0), F(3, 2), -F(1, 4)):
        with pytest.raises(ValueError):
            check_grid_fraction(bad)


# ---------------------------------------------------------------------------
# scalar snapping (q = 2)
# ---------------------------------------------------------------------------

def test_binary_snap_is_ceil_except_zero():
    eps = F(1, 4)
    assert perturb_point(2, F(0), eps) == 0
    assert perturb_point(2, F(2, 5), eps) == F(1, 2)
    assert perturb_point(2, F(1, 4), eps) == F(1, 4)
    assert perturb_point(2, F(1, 100), eps) == F(1, 4)
    assert perturb_point(2, F(1), eps) == 1


def test_binary_snap_increase_is_below_eps():
    rng = random.Random(13)
    eps = F(1, 5)
    for _ in range(100):
        a = F(rng.randint(0, 60), 60)
        snapped = perturb_point(2, a, eps)
        assert 0 <= snapped - a < eps or (a == 0 and snapped == 0)


# ---------------------------------------------------------------------------
# vector snapping (q > 2)
# ---------------------------------------------------------------------------

def test_ternary_snap_worked_example():
    got = perturb_point(3, (F(3, 10), F(3, 10), F(2, 5)), F(1, 2))
    assert got == (0, F(1, 2), F(1, 2))


def test_snap_restricted_to_two_labels_matches_scalar_rule():
    rng = random.Random(29)
    for _ in range(200):
        eps = F(1, rng.randint(2, 6))
        a = F(rng.randint(0, 24), 24)
        vec = perturb_point(3, (1 - a, F(0), a), eps)
        scalar = perturb_point(2, a, eps)
        assert vec == (1 - scalar, 0, scalar)


def _upper_tails(q, pt):
    return [sum(pt[i:], F(0)) for i in range(q)]


def test_snap_moves_mass_only_upward():
    rng = random.Random(31)
    for _ in range(300):
        q = rng.choice([3, 4])
        eps = F(1, rng.randint(2, 6))
        cuts = sorted(F(rng.randint(0, 24), 24) for _ in range(q - 1))
        pt = tuple(b - a for a, b in zip([F(0)] + cuts, cuts + [F(1)]))
        snapped = perturb_point(q, pt, eps)
        assert sum(snapped, F(0)) == 1
        assert all(a >= 0 for a in snapped)
        assert snapped in set(grid_points(q, eps))
        for before, after in zip(_upper_tails(q, pt),
                                 _upper_tails(q, snapped)):
            assert after >= before


def test_snap_is_idempotent():
    rng = random.Random(37)
    for _ in range(100):
        q = rng.choice([2, 3, 4])
        eps = F(1, rng.randint(2, 5))
        cuts = sorted(F(rng.randint(0, 20), 20) for _ in range(q - 1))
        pt = tuple(b - a for a, b in zip([F(0)] + cuts, cuts + [F(1)]))
        if q == 2:
            pt = pt[1]
        once = perturb_point(q, pt, eps)
        assert perturb_point(q, once, eps) == once


def test_grid_point_counts():
    assert grid_size(3, F(1, 2)) == len(grid_points(3, F(1, 2))) == 6
    assert grid_size(3, F(1, 3)) == 10
    assert grid_size(3, F(1, 4)) == 15
    assert grid_size(4, F(1, 2)) == 10
    assert grid_size(4, F(1, 3)) == 20
    assert grid_size(4, F(1, 4)) == 35


def test_grid_points_are_snap_fixed_points():
    for q, eps in [(3, F(1, 2)), (3, F(1, 3)), (4, F(1, 2))]:
        for pt in grid_points(q, eps):
            assert perturb_point(q, pt, eps) == pt


# ---------------------------------------------------------------------------
# feasibility preservation (the regression the top-down rule fixes)
# ---------------------------------------------------------------------------

def _pinning_instance():
    pred = Predicate("p0", 3, 3, ((0, 2, 1), (2, 0, 0)))
    return make_instance(3, [F(3, 8), F(9, 16), F(1, 16)], [pred],
                         [((0, 2, 1), 0)])


def test_regression_snapped_solution_stays_in_hull():
    inst = _pinning_instance()
    x = [(F(0), F(5, 22), F(17, 22)),
         (F(0), F(17, 22), F(5, 22)),
         (F(17, 22), F(0), F(5, 22))]
    assert check_feasible_fractional(inst, x)
    report = verify_perturbation(inst, x, F(1, 4))
    assert report["feasible_before"]
    assert report["feasible_after"]
    assert report["increase"] >= 0
    assert report["ok"]


def test_perturbation_report_on_random_feasible_solutions():
    rng = random.Random(43)
    checked = 0
    for _ in range(60):
        q = rng.choice([2, 3])
        inst = random_instance(rng, q, rng.randint(2, 4), rng.randint(1, 3))
        x = random_feasible_solution(rng, inst)
        if not check_feasible_fractional(inst, x):
            continue
        eps = F(1, rng.choice([2, 3, 4, 5]))
        report = verify_perturbation(inst, x, eps)
        assert report["ok"], report
        assert report["increase"] <= eps * q * q
        checked += 1
    assert checked >= 40


# ---------------------------------------------------------------------------
# bucket rounding
# ---------------------------------------------------------------------------

def test_round_matches_enumeration_oracle():
    rng = random.Random(47)
    for _ in range(25):
        q = rng.choice([2, 3])
        inst = random_instance(rng, q, rng.randint(2, 4), rng.randint(1, 3))
        x = solve_lp(inst).x
        eps = F(1, rng.choice([2, 3, 4]))
        result = round_solution(inst, x, eps)
        snapped = perturb(inst, x, eps).x_eps
        edges = [([v for v in e.vertices], [list(m) for m in
                  inst.predicates[e.predicate].minimal])
                 for e in inst.edges]
        want = oracles.round_by_enumeration(q, list(inst.weights), snapped,
                                            edges)
        assert result.value == want
        assert result.value >= brute_force_opt(inst)[0]


def test_round_equals_opt_of_bucket_collapsed_instance():
    rng = random.Random(53)
    for _ in range(15):
        q = rng.choice([2, 3])
        inst = random_instance(rng, q, rng.randint(2, 4), rng.randint(1, 3))
        x = solve_lp(inst).x
        eps = F(1, 3)
        collapsed, _ = bucketed_instance(inst, x, eps)
        assert round_solution(inst, x, eps).value == \
            brute_force_opt(collapsed)[0]


def test_round_uniform_covering_solution_to_all_top():
    inst = hvc(3)
    result = round_solution(inst, [F(1, 3)] * 3, F(1, 6))
    assert result.value == 1
    assert result.labels == (1, 1, 1)


def test_round_result_is_lexicographically_least():
    inst = vc_edge()
    result = round_solution(inst, [F(1, 2), F(1, 2)], F(1, 2))
    # one bucket; (1,) is the cheapest feasible bucket labeling
    assert result.labels == (1, 1)
    assert result.value == 1


def test_round_cap():
    inst = hvc(4)
    with pytest.raises(CapExceeded):
        round_solution(inst, solve_lp(inst).x, F(1, 4), max_bits=1)


def test_integrality_report_fields_are_consistent():
    inst = ternary_chain()
    rep = integrality_report(inst, F(1, 4))
    assert rep["lp"] == lp_value(inst)
    assert rep["opt"] == brute_force_opt(inst)[0]
    assert rep["round"] >= rep["opt"] >= rep["lp"]
    assert rep["round_over_opt"] == rep["round"] / rep["opt"]
    assert val(inst, rep["lp_x"]) == rep["lp"]
