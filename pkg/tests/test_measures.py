#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jackkit.errors import JackkitError
from jackkit.jack_engine import JackEngine
from jackkit.measures import (
    DiscreteMeasure,
    energy_observable,
    factorial_moment_check,
    gstar_observable,
    growth_ratio,
    linear_bound,
    linear_bound_check,
    linear_bound_extreme_check,
    linear_bound_extreme_point,
    linear_functional,
    measure_from_phi,
    moment_from_gstar,
    moment_ratio,
    pstar_observable,
    second_moment,
    second_moment_check,
    split_weight_bound,
)
from jackkit.partitions import rho_pairing
from strategies import rational_vectors

THETAS = ["1/2", "1", "2"]
SMALL_SIGNATURES = [(1, 0), (2, 0), (1, 1, 0), (2, 0, -1), (1, -1), (0, 0, -2), (3, 1, 0)]


def test_measure_from_phi_simple():
    measure = measure_from_phi((1, 0), 1)
    assert measure.masses == {0: Fraction(1, 2), 1: Fraction(1, 2)}
    assert measure_from_phi((4,), "1/2").masses == {4: 1}
    assert measure_from_phi((2, 2, 2), "1/2").masses == {2: 1}


def test_discrete_measure_validation():
    with pytest.raises(JackkitError):
        DiscreteMeasure({0: Fraction(1, 2)})
    with pytest.raises(JackkitError):
        DiscreteMeasure({0: Fraction(3, 2), 1: Fraction(-1, 2)})
    approx = DiscreteMeasure({0: 0.25, 1: 0.75 + 1e-12})
    assert not approx.is_exact()
    measure = DiscreteMeasure({1: Fraction(1, 3), -1: Fraction(2, 3), 5: 0})
    assert measure.support == [-1, 1]
    assert measure.moment(1) == Fraction(-1, 3)
    assert measure.factorial_moment(2) == Fraction(4, 3)
    assert DiscreteMeasure.from_dict(measure.to_dict()) == measure


@pytest.mark.parametrize("theta", THETAS)
@pytest.mark.parametrize("lam", SMALL_SIGNATURES)
def test_moment_identities(lam, theta):
    engine = JackEngine(theta)
    assert second_moment_check(lam, theta, engine)["success"]
    assert factorial_moment_check(lam, theta, 4, engine)["success"]
    measure = measure_from_phi(lam, theta, engine)
    for m in range(5):
        assert moment_from_gstar(lam, m, theta) == measure.moment(m)


def test_second_moment_value():
    assert second_moment((1, 0), 1) == Fraction(1, 2)
    assert second_moment((3, 3, 3), "1/2") == 9


def test_moment_ratio():
    assert moment_ratio((0, 0), 1) == 0.0
    assert moment_ratio((1, 0), 1) == pytest.approx(2.0)


@settings(max_examples=200, deadline=None)
@given(rational_vectors(max_n=7), st.integers(min_value=0, max_value=4))
def test_linear_bound_on_rational_vectors(lam, m):
    assert linear_bound_check(lam, m)


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(rational_vectors(max_n=7), st.integers(min_value=0, max_value=4))
def test_linear_bound_thousand_vectors(lam, m):
    assert linear_bound_check(lam, m)


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_linear_bound_extreme_points(n):
    for k in range(1, n):
        point = linear_bound_extreme_point(n, k)
        assert sum(point) == 0
        assert rho_pairing(point) == n
    for m in range(5):
        assert linear_bound_extreme_check(n, m)["success"]
    with pytest.raises(JackkitError):
        linear_bound_extreme_point(n, n)


def test_linear_bound_helpers():
    assert linear_functional((3, 1, -2), 2) == 1 * 1 + (-2) * 4
    assert linear_bound((1, 0), 1) == 1 * 2 + 2 * 1
    with pytest.raises(JackkitError):
        linear_functional((0, 1), 1)
    assert linear_bound_check(("1/2", "-1/3"), 3)


@pytest.mark.parametrize("lam", [(2, 0, -1), (3, 3, -4, -4), (0,), (5, -5)])
def test_split_weight_bound(lam):
    assert split_weight_bound(lam)["success"]


def test_growth_ratio():
    zero = growth_ratio(pstar_observable(1), [(0, 0, 0)], 1)
    assert zero["sup"] == 0.0
    result = growth_ratio(pstar_observable(1), [(1, 0), (3, 0)], 1)
    assert result["argmax"] == [3, 0]
    assert result["count"] == 2
    assert result["sup"] == pytest.approx(3 / math.sqrt(21))
    assert growth_ratio(energy_observable(), [], 1)["argmax"] is None


def test_growth_ratio_row_family():
    family = [(n,) + (0,) * (n - 1) for n in range(1, 9)]
    assert growth_ratio(pstar_observable(1), family, "1/2")["sup"] <= 1


def test_growth_ratio_gstar_random_family():
    rng = np.random.default_rng(0)
    family = []
    for _ in range(200):
        n = int(rng.integers(1, 9))
        family.append(tuple(sorted(rng.integers(-10, 11, size=n).tolist(), reverse=True)))
    result = growth_ratio(gstar_observable(2), family, 1)
    assert result["count"] == 200
    # |g*_2| ≤ (Σ|λ_i| + n)² ≤ 2(n + 1)·max(𝔑, n)²
    assert 0 < result["sup"] <= 18
