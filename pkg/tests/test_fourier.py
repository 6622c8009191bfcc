"""Biased Fourier expansion of cube functions."""

import random
from fractions import Fraction as F

import pytest

import oracles
from smcsp.fourier import (biased_fourier, conditional_variance_influence,
                           dictator_table, influence, influences, mask_of,
                           point_of)


def _random_table(rng, r, rational=True):
    if rational:
        return [F(rng.randint(-4, 4), rng.randint(1, 4))
                for _ in range(1 << r)]
    return [rng.uniform(-2, 2) for _ in range(1 << r)]


def test_mask_and_point_are_inverse():
    for r in (1, 3, 5):
        for mask in range(1 << r):
            assert mask_of(point_of(mask, r)) == mask


def test_parseval_identity_exact():
    rng = random.Random(101)
    for r in (1, 2, 4):
        p = F(rng.randint(1, 5), 6)
        table = _random_table(rng, r)
        exp = biased_fourier(table, p)
        e_f2 = F(0)
        for mask, v in enumerate(table):
            ones = bin(mask).count("1")
            e_f2 += v * v * p ** ones * (1 - p) ** (r - ones)
        assert exp.parseval_sum() == e_f2


def test_empty_set_coefficient_is_the_mean():
    rng = random.Random(103)
    r, p = 3, F(1, 3)
    table = _random_table(rng, r)
    exp = biased_fourier(table, p)
    mean = F(0)
    for mask, v in enumerate(table):
        ones = bin(mask).count("1")
        mean += v * p ** ones * (1 - p) ** (r - ones)
    assert exp.mean() == mean


def test_influence_matches_restriction_oracle():
    rng = random.Random(107)
    for _ in range(10):
        r = rng.randint(1, 5)
        p = F(rng.randint(1, 7), 8)
        table = _random_table(rng, r)
        i = rng.randrange(r)
        got = influence(table, i, p)
        want = oracles.influence_by_restriction(
            [float(v) for v in table], i, float(p), r)
        assert abs(float(got) - want) < 1e-9


def test_influences_returns_all_coordinates():
    rng = random.Random(109)
    r, p = 4, F(2, 5)
    table = _random_table(rng, r)
    got = influences(table, p)
    assert got == [influence(table, i, p) for i in range(r)]


def test_dictator_influence_is_variance():
    for r in (2, 4, 6):
        for num in (1, 2, 3):
            p = F(num, 4)
            table = dictator_table(r, r // 2)
            inf = influences(table, p)
            for i in range(r):
                assert inf[i] == (p * (1 - p) if i == r // 2 else 0)


def test_degree_cap_only_lowers_influence():
    rng = random.Random(113)
    for _ in range(10):
        r = rng.randint(2, 5)
        p = F(rng.randint(1, 7), 8)
        table = _random_table(rng, r)
        i = rng.randrange(r)
        full = influence(table, i, p)
        prev = F(0)
        for d in range(1, r + 1):
            capped = influence(table, i, p, d=d)
            assert capped <= full
            assert capped >= prev
            prev = capped
        assert influence(table, i, p, d=r) == full


def test_conditional_variance_route_agrees():
    rng = random.Random(127)
    for _ in range(10):
        r = rng.randint(1, 5)
        p = F(rng.randint(1, 7), 8)
        table = _random_table(rng, r)
        i = rng.randrange(r)
        assert conditional_variance_influence(table, i, p) == \
            influence(table, i, p)


def test_float_tables_are_accepted():
    rng = random.Random(131)
    r, p = 4, 0.3
    table = _random_table(rng, r, rational=False)
    exp = biased_fourier(table, p)
    direct = oracles.e_f_squared(table, p, r)
    assert abs(exp.parseval_sum() - direct) < 1e-9


def test_constant_function_has_no_influence():
    table = [F(5, 7)] * 8
    assert influences(table, F(1, 3)) == [0, 0, 0]


def test_bias_must_be_a_probability():
    with pytest.raises(ValueError):
        biased_fourier([F(0), F(1)], F(0))
    with pytest.raises(ValueError):
        biased_fourier([F(0), F(1)], F(3, 2))


def test_table_length_must_be_power_of_two():
    with pytest.raises(ValueError):
        biased_fourier([F(0), F(1), F(0)], F(1, 2))
