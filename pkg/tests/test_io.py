"""File formats: round trips, canonical form, and rejection catalog."""

import json
import random
from fractions import Fraction as F
from pathlib import Path

import pytest

from smcsp import io
from smcsp.randgen import (random_game, random_instance, ternary_chain,
                           twisted_cycle, vc_edge)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------

def test_parse_rational_accepts_integers_and_strings():
    assert io.parse_rational(3) == 3
    assert io.parse_rational("2/5") == F(2, 5)
    assert io.parse_rational("-1/2") == F(-1, 2)


@pytest.mark.parametrize("bad", ["2/4", "1/0", "1/-2", "0.5", "x/y", "1/2/3",
                                 True, 1.5, None])
def test_parse_rational_rejects_noncanonical(bad):
    with pytest.raises(io.ParseError):
        io.parse_rational(bad)


def test_format_parse_rational_round_trip():
    rng = random.Random(3)
    for _ in range(50):
        v = F(rng.randint(-30, 30), rng.randint(1, 30))
        assert io.parse_rational(io.format_rational(v)) == v


# ---------------------------------------------------------------------------
# instance round trips
# ---------------------------------------------------------------------------

def test_instance_round_trip_random():
    rng = random.Random(17)
    for _ in range(20):
        inst = random_instance(rng, rng.choice([2, 3]), rng.randint(2, 5),
                               rng.randint(1, 4))
        text = io.serialize_instance(inst)
        back = io.parse_instance(text)
        assert back == inst
        assert io.serialize_instance(back) == text


def test_fixture_files_parse():
    for name in ["vc_edge", "hvc3", "hvc4", "triangle", "ternary_chain"]:
        text = (FIXTURES / f"{name}.json").read_text()
        inst = io.parse_instance(text)
        assert io.serialize_instance(inst) == text


def test_meta_key_is_tolerated():
    doc = json.loads(io.serialize_instance(vc_edge()))
    doc["meta"] = {"note": "anything"}
    io.parse_instance(json.dumps(doc))


@pytest.mark.parametrize("mutate,fragment", [
    (lambda d: d.pop("q"), "missing"),
    (lambda d: d.update(extra=1), "unknown"),
    (lambda d: d["vertices"].append({"id": "u", "weight": "1/2"}),
     "duplicate"),
    (lambda d: d["edges"].append(
        {"vertices": ["u", "zz"], "predicate": d["predicates"][0]["name"]}),
     "unknown vertex"),
    (lambda d: d["edges"].append(
        {"vertices": ["u"], "predicate": d["predicates"][0]["name"]}),
     "arity"),
    (lambda d: d["predicates"][0]["minimal"].append([0, 9]), "alphabet"),
    (lambda d: d["vertices"][0].update(weight="2/4"), "canonical"),
])
def test_instance_rejection_catalog(mutate, fragment):
    doc = json.loads(io.serialize_instance(vc_edge()))
    mutate(doc)
    with pytest.raises(io.ParseError, match=fragment):
        io.parse_instance(json.dumps(doc))


# ---------------------------------------------------------------------------
# solutions and assignments
# ---------------------------------------------------------------------------

def test_solution_round_trip_binary_and_ternary():
    inst2 = vc_edge()
    x2 = [F(1, 3), F(2, 3)]
    assert io.parse_solution(io.serialize_solution(inst2, x2), inst2) == x2

    inst3 = ternary_chain()
    x3 = [(F(1, 2), F(1, 4), F(1, 4)), (0, F(1), 0), (F(1, 3), F(1, 3),
                                                      F(1, 3))]
    got = io.parse_solution(io.serialize_solution(inst3, x3), inst3)
    assert got == [tuple(F(a) for a in pt) for pt in x3]


def test_solution_requires_every_vertex():
    inst = vc_edge()
    with pytest.raises(io.ParseError, match="missing"):
        io.parse_solution('{"x": {"u": "1/2"}}', inst)
    with pytest.raises(io.ParseError, match="unknown"):
        io.parse_solution('{"x": {"u": "1/2", "v": "1/2", "w": "1/2"}}',
                          inst)


def test_assignment_round_trip_and_range_check():
    inst = ternary_chain()
    labels = (2, 0, 1)
    text = io.serialize_assignment(inst, labels)
    assert io.parse_assignment(text, inst) == labels
    with pytest.raises(io.ParseError, match="label"):
        io.parse_assignment('{"labels": {"a": 3, "b": 0, "c": 0}}', inst)


# ---------------------------------------------------------------------------
# unique games
# ---------------------------------------------------------------------------

def test_ug_round_trip():
    rng = random.Random(23)
    for _ in range(10):
        ug, _ = random_game(rng, rng.randint(1, 3), rng.randint(1, 3),
                            rng.randint(1, 3))
        text = io.serialize_ug(ug)
        back = io.parse_ug(text)
        assert back == ug
        assert io.serialize_ug(back) == text


def test_ug_fixture_parses():
    twisted = io.parse_ug((FIXTURES / "ug_twisted_cycle.json").read_text())
    assert twisted == twisted_cycle()


def test_ug_permutations_are_one_indexed_on_the_wire():
    doc = json.loads(io.serialize_ug(twisted_cycle()))
    for e in doc["edges"]:
        assert sorted(e["pi"]) == [1, 2]


@pytest.mark.parametrize("mutate,fragment", [
    (lambda d: d["edges"][0].update(pi=[1, 1]), "permutation"),
    (lambda d: d["edges"][0].update(pi=[0, 1]), "permutation"),
    (lambda d: d["edges"][0].update(u="v0"), "unknown left"),
    (lambda d: d.update(left=d["left"] + d["right"][:1]), "overlap"),
    (lambda d: d["edges"][0].update(weight="1/3"), "sum"),
])
def test_ug_rejection_catalog(mutate, fragment):
    doc = json.loads(io.serialize_ug(twisted_cycle()))
    mutate(doc)
    with pytest.raises(io.ParseError, match=fragment):
        io.parse_ug(json.dumps(doc))
