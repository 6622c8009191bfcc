"""Predicates, instances, assignments, and the enumeration oracle."""

import random
from fractions import Fraction as F

import pytest

import oracles
from smcsp.caps import CapExceeded
from smcsp.model import (Edge, Predicate, assignment_cost, brute_force_opt,
                         covering_predicate, is_covering_predicate,
                         is_feasible, label_point, make_instance, mix_points,
                         point_distribution, point_value,
                         solution_from_assignments, top_point,
                         upward_closure, validate_instance)
from smcsp.randgen import (hvc, random_instance, ternary_chain,
                           triangle_cover, vc_edge)


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def test_covering_predicate_accepts_iff_some_one():
    pred = covering_predicate(3)
    for t in [(0, 0, 1), (1, 0, 0), (1, 1, 1), (0, 1, 0)]:
        assert pred.accepts(t)
    assert not pred.accepts((0, 0, 0))
    assert is_covering_predicate(pred)


def test_upward_closure_matches_direct_enumeration():
    rng = random.Random(11)
    for _ in range(25):
        q = rng.choice([2, 3])
        arity = rng.choice([1, 2, 3])
        gen = sorted({tuple(rng.randrange(q) for _ in range(arity))
                      for _ in range(rng.randint(1, 3))})
        if all(all(a == 0 for a in g) for g in gen):
            gen = [tuple(1 if i == 0 else 0 for i in range(arity))]
        pred = Predicate("p", arity, q, tuple(gen))
        got = set(upward_closure(pred))
        want = set(oracles.accepted_tuples(q, [list(g) for g in gen]))
        assert got == want


def test_predicate_validate_flags_non_antichain():
    pred = Predicate("bad", 2, 2, ((0, 1), (1, 1)))
    assert any("antichain" in p or "dominat" in p for p in pred.validate())


def test_always_false_predicate_rejected():
    pred = Predicate("empty", 2, 2, ())
    assert pred.validate()


# ---------------------------------------------------------------------------
# instance validation
# ---------------------------------------------------------------------------

def test_make_instance_rejects_bad_weight_sum():
    with pytest.raises(ValueError, match="sum"):
        make_instance(2, [F(1, 2), F(1, 3)], [covering_predicate(2)],
                      [((0, 1), 0)])


def test_make_instance_rejects_arity_mismatch():
    with pytest.raises(ValueError, match="arity"):
        make_instance(2, [F(1, 2), F(1, 2)], [covering_predicate(3)],
                      [((0, 1), 0)])


def test_validate_catches_duplicate_ids():
    inst = vc_edge()
    bad = type(inst)(inst.q, ("u", "u"), inst.weights, inst.predicates,
                     inst.edges)
    assert any("unique" in p for p in validate_instance(bad))


def test_edges_may_repeat_vertices():
    inst = make_instance(2, [F(1)], [covering_predicate(2)], [((0, 0), 0)])
    assert is_feasible(inst, (1,))
    assert not is_feasible(inst, (0,))


# ---------------------------------------------------------------------------
# assignments and the exact optimum
# ---------------------------------------------------------------------------

def test_assignment_cost_is_weighted_label_sum():
    inst = ternary_chain()
    labels = (2, 1, 0)
    want = sum((w * a for w, a in zip(inst.weights, labels)), F(0))
    assert assignment_cost(inst, labels) == want


def test_all_top_is_always_feasible():
    rng = random.Random(5)
    for _ in range(20):
        inst = random_instance(rng, rng.choice([2, 3]), rng.randint(2, 5),
                               rng.randint(1, 4))
        top = (inst.q - 1,) * inst.n
        assert is_feasible(inst, top)


def test_brute_force_matches_enumeration_oracle():
    rng = random.Random(7)
    for _ in range(20):
        inst = random_instance(rng, rng.choice([2, 3]), rng.randint(2, 5),
                               rng.randint(1, 4))
        got, witness = brute_force_opt(inst)
        edges = [([v for v in e.vertices], [list(m) for m in
                  inst.predicates[e.predicate].minimal])
                 for e in inst.edges]
        want, _ = oracles.opt_by_enumeration(inst.q, list(inst.weights),
                                             edges)
        assert got == want
        assert is_feasible(inst, witness)
        assert assignment_cost(inst, witness) == got


def test_brute_force_boolean_fast_path_agrees():
    # n > 14 triggers the bitmask path for q = 2; compare on a small one
    # by lowering the threshold indirectly: build 16 vertices.
    rng = random.Random(9)
    weights = [F(1, 16)] * 16
    pred = covering_predicate(2)
    edges = [((rng.randrange(16), rng.randrange(16)), 0) for _ in range(6)]
    edges = [(vs if vs[0] != vs[1] else (vs[0], (vs[1] + 1) % 16), p)
             for vs, p in edges]
    inst = make_instance(2, weights, [pred], edges)
    got, witness = brute_force_opt(inst)
    oedges = [([v for v in e.vertices], [[0, 1], [1, 0]])
              for e in inst.edges]
    want, _ = oracles.opt_by_enumeration(2, weights, oedges)
    assert got == want
    assert is_feasible(inst, witness)


def test_brute_force_respects_cap():
    inst = hvc(3)
    with pytest.raises(CapExceeded):
        brute_force_opt(inst, max_bits=1)


def test_named_instances_have_known_optima():
    assert brute_force_opt(vc_edge())[0] == F(1, 2)
    assert brute_force_opt(hvc(3))[0] == F(1, 3)
    assert brute_force_opt(triangle_cover())[0] == F(2, 3)
    assert brute_force_opt(ternary_chain())[0] == F(3, 4)


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------

def test_point_value_binary_is_identity():
    assert point_value(2, F(3, 7)) == F(3, 7)


def test_point_value_general_is_expected_label():
    assert point_value(3, (F(1, 2), F(1, 4), F(1, 4))) == F(3, 4)


def test_label_and_top_points():
    assert label_point(3, 1) == (0, 1, 0)
    assert top_point(2) == 1
    assert top_point(4) == (0, 0, 0, 1)


def test_point_distribution_binary():
    assert point_distribution(2, F(1, 3)) == (F(2, 3), F(1, 3))


def test_mix_points_binary_and_ternary():
    assert mix_points(2, [F(0), F(1)], [F(1, 4), F(3, 4)]) == F(3, 4)
    got = mix_points(3, [(1, 0, 0), (0, 0, 1)], [F(1, 2), F(1, 2)])
    assert got == (F(1, 2), 0, F(1, 2))


def test_solution_from_assignments_averages_labels():
    inst = vc_edge()
    x = solution_from_assignments(inst, [(0, 1), (1, 0)],
                                  [F(1, 2), F(1, 2)])
    assert x == [F(1, 2), F(1, 2)]
