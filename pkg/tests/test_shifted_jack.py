#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from fractions import Fraction

import pytest
from hypothesis import given, settings

from jackkit.errors import DeskScaleError, JackkitError, ParseError
from jackkit.partitions import contains, hook_H, pad, partitions_up_to
from jackkit.shifted_jack import ShiftedJackEngine, ShiftedPoly, gstar_value
from strategies import signatures, thetas

THETAS = [Fraction(1, 2), Fraction(1), Fraction(2)]


def test_empty_and_single_box():
    engine = ShiftedJackEngine("1/2")
    assert engine.pstar((), 3)((5, 2, 1)) == 1
    single = engine.pstar((1,), 3)
    assert single((0, 0, 0)) == 0
    assert single((1, 0, 0)) == hook_H((1,), engine.theta) == 1
    assert single((2, 1, 0)) == 3


@pytest.mark.parametrize("theta", THETAS)
def test_interpolation_conditions(theta):
    engine = ShiftedJackEngine(theta)
    n = 3
    points = partitions_up_to(4, max_parts=n)
    for mu in partitions_up_to(3, max_parts=n):
        poly = engine.pstar(mu, n)
        assert poly.degree() == sum(mu)
        for lam in points:
            value = poly(pad(lam, n))
            if lam == mu:
                assert value == hook_H(mu, theta)
            elif not contains(mu, lam) or sum(lam) <= sum(mu):
                assert value == 0, (mu, lam)


@pytest.mark.parametrize("theta", THETAS)
def test_pstar_eval_matches_polynomial(theta):
    engine = ShiftedJackEngine(theta)
    poly = engine.pstar((2, 1), 3)
    for point in [(3, 1, 0), (2, 2, 1), (4, 0, 0), (1, -1, -2)]:
        assert engine.pstar_eval((2, 1), point) == poly(point)


@pytest.mark.parametrize("theta", THETAS)
def test_top_term_and_symmetry(theta):
    engine = ShiftedJackEngine(theta)
    for mu in [(1,), (2,), (1, 1), (2, 1)]:
        poly = engine.pstar(mu, 3)
        assert poly.top_term() == engine.jack.jack_P(pad(mu, 3))
        assert poly.is_shifted_symmetric()


def test_stability_under_last_zero():
    engine = ShiftedJackEngine("1/2")
    assert engine.pstar((1, 1), 3).restrict_last_zero() == engine.pstar((1, 1), 2)
    with pytest.raises(JackkitError):
        engine.pstar((1,), 1).restrict_last_zero()


@pytest.mark.parametrize("mu, n, theta", [
    ((1,), 2, Fraction(1, 2)),
    ((2,), 2, Fraction(1)),
    ((1, 1), 3, Fraction(1, 2)),
    ((2, 1), 2, Fraction(2)),
])
def test_interpolation_oracle(mu, n, theta):
    engine = ShiftedJackEngine(theta)
    assert engine.interpolation_oracle(mu, n) == engine.pstar(mu, n)


def test_oracle_limits():
    engine = ShiftedJackEngine(1)
    with pytest.raises(DeskScaleError):
        engine.interpolation_oracle((9,), 1)
    with pytest.raises(JackkitError):
        engine.pstar((1, 1, 1), 2)


def test_shifted_schur():
    engine = ShiftedJackEngine(1)
    for mu in [(2,), (1, 1), (2, 1)]:
        assert engine.shifted_schur(mu, 2) == engine.pstar(mu, 2)
    with pytest.raises(JackkitError):
        ShiftedJackEngine("1/2").shifted_schur((1,), 1)


def test_qstar_normalisation():
    engine = ShiftedJackEngine("1/2")
    mu = (2, 1)
    point = (3, 1, 0)
    assert engine.qstar(mu, 3)(point) == engine.qstar_eval(mu, point)
    assert engine.qstar_eval((1,), point) == engine.theta * sum(point)


def test_gstar_values():
    assert gstar_value(0, (3, 1), Fraction(1, 2)) == 1
    assert gstar_value(2, (1, 1), 1) == 0
    assert gstar_value(2, (2, 0), 1) == 2


@given(signatures(max_n=4), thetas)
@settings(max_examples=40, deadline=None)
def test_gstar_one_is_theta_times_size(lam, theta):
    assert gstar_value(1, lam, theta) == theta * sum(lam)


@pytest.mark.parametrize("theta", THETAS)
def test_gstar_is_qstar_of_row(theta):
    engine = ShiftedJackEngine(theta)
    for k in range(4):
        for point in [(2, 1, 0), (3, 3, 1), (4, 0, 0)]:
            assert engine.gstar_k(k, point) == engine.qstar_eval((k,) if k else (), point)


def test_gstar_poly_matches_values():
    engine = ShiftedJackEngine("1/2")
    poly = engine.gstar_poly(3, 3)
    for point in [(2, 1, 0), (1, 0, -1), (5, -2, -3)]:
        assert poly(point) == gstar_value(3, point, engine.theta)


def test_power_sum_value():
    engine = ShiftedJackEngine(2)
    # p*_1 = Σλ_i
    assert engine.shifted_power_sum_value(1, (3, 1, -1)) == 3
    poly = ShiftedPoly(2, engine.theta, engine.shifted_power_sum(2, 2))
    assert poly((3, -1)) == engine.shifted_power_sum_value(2, (3, -1))


def test_json():
    poly = ShiftedJackEngine("1/2").pstar((2, 1), 3)
    assert ShiftedPoly.from_json(poly.to_json()) == poly
    with pytest.raises(ParseError):
        ShiftedPoly.from_json({"n": 2})
