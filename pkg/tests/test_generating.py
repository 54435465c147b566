#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from fractions import Fraction

import pytest
from hypothesis import given, settings

from jackkit.errors import NonIntegerPointError
from jackkit.generating import (
    convolution_recursion_check,
    degeneration_check,
    gauss_summation_check,
    gen_G,
    gen_Gstar,
    gstar_product_formula,
    gstar_series_check,
    gstar_signature_split,
)
from jackkit.partitions import partitions_up_to
from strategies import signatures, thetas

THETAS = [Fraction(1, 2), Fraction(1), Fraction(2)]


@pytest.mark.parametrize("theta", THETAS)
def test_gen_G_single_variable(theta):
    assert gen_G([1], theta, 2).coefs == [1, theta, theta * (theta + 1) / 2]


def test_gen_G_examples():
    assert gen_G([], "1/2", 3).coefs == [1, 0, 0, 0]
    assert gen_G([1, 1], 1, 2).coefs == [1, 2, 3]


def test_gen_Gstar_at_zero():
    series = gen_Gstar([0, 0, 0], "1/2", 4)
    assert series.var == "ff"
    assert series.coefs == [1, 0, 0, 0, 0]


def test_product_formula_single_box():
    theta = Fraction(2, 3)
    assert gstar_product_formula([1], 1, theta, 3).coefs == [1, theta, 0, 0]
    assert gstar_product_formula([0, 0], 2, theta, 3).coefs == [1, 0, 0, 0]
    with pytest.raises(NonIntegerPointError):
        gstar_product_formula([Fraction(1, 2)], 1, theta, 2)


@pytest.mark.parametrize("theta", THETAS)
def test_series_matches_product(theta):
    for lam in partitions_up_to(4, max_parts=3):
        result = gstar_series_check(lam, 3, theta, 5)
        assert result["success"], result


@pytest.mark.slow
@pytest.mark.parametrize("theta", THETAS)
def test_series_matches_product_full(theta):
    for lam in partitions_up_to(5, max_parts=3):
        result = gstar_series_check(lam, 3, theta, 5)
        assert result["success"], result


@pytest.mark.parametrize("lam, theta", [
    ((1, -1), Fraction(1)),
    ((2, 0, -1), Fraction(1, 2)),
    ((3, 1), Fraction(2)),
])
def test_signature_split_examples(lam, theta):
    assert gstar_signature_split(lam, theta, 4)["success"]


@given(signatures(max_n=3, bound=3), thetas)
@settings(max_examples=50, deadline=None)
def test_signature_split_random(lam, theta):
    result = gstar_signature_split(lam, theta, 4)
    assert result["success"], result


def test_convolution_recursion():
    assert convolution_recursion_check([2, 1], 1, 2)["success"]
    assert convolution_recursion_check([3, 1, -1], Fraction(1, 2), 3)["success"]
    failure = convolution_recursion_check([2], 1, 2)
    assert not failure["success"]


@pytest.mark.parametrize("m", range(-2, 3))
def test_gauss_summation(m):
    assert gauss_summation_check(m, Fraction(1, 2), 5)["success"]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_degeneration_to_top_degree(k):
    assert degeneration_check(k, [1, Fraction(1, 2), -2], Fraction(1, 2))["success"]
