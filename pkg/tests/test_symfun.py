#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from fractions import Fraction

import pytest

from jackkit.errors import InvalidPartitionError, JackkitError, ParseError
from jackkit.symfun import SymFun, inner_product, power_sum, power_to_monomial, to_power_sums


def test_construction_pads_and_drops_zeros():
    f = SymFun(3, {(2,): 1, (1, 1): 0})
    assert f.terms == {(2, 0, 0): Fraction(1)}
    assert f.coefficient((2,)) == 1
    with pytest.raises(InvalidPartitionError):
        SymFun(2, {(0, 1): 1})
    with pytest.raises(InvalidPartitionError):
        SymFun(2, {(1, 1, 1): 1})


def test_arithmetic():
    f = SymFun(2, {(1, 0): 1})
    g = SymFun(2, {(1, 0): 2, (1, 1): 1})
    assert (g - f - f) == SymFun(2, {(1, 1): 1})
    assert f.scale(3) + (-f) == SymFun(2, {(1, 0): 2})
    assert f.shift(-1) == SymFun(2, {(0, -1): 1})
    with pytest.raises(JackkitError):
        f + SymFun(3)


def test_power_sums():
    assert power_to_monomial((1, 1), (1, 1)) == 2
    assert power_to_monomial((1, 1), (2,)) == 1
    assert power_sum((1, 1), 2) == SymFun(2, {(2, 0): 1, (1, 1): 2})
    h2 = SymFun(2, {(2, 0): 1, (1, 1): 1})
    assert to_power_sums(h2) == {(2,): Fraction(1, 2), (1, 1): Fraction(1, 2)}


@pytest.mark.parametrize("theta", [Fraction(1, 2), Fraction(1), Fraction(3)])
def test_inner_product_on_power_sums(theta):
    p1 = power_sum((1,), 2)
    p2 = power_sum((2,), 2)
    p11 = power_sum((1, 1), 2)
    assert inner_product(p1, p1, theta) == 1 / theta
    assert inner_product(p2, p2, theta) == 2 / theta
    assert inner_product(p11, p11, theta) == 2 / theta ** 2
    assert inner_product(p2, p11, theta) == 0


def test_inner_product_needs_enough_variables():
    with pytest.raises(JackkitError):
        inner_product(power_sum((2,), 1), power_sum((2,), 1), 1)


def test_evaluate_and_expand():
    f = SymFun(2, {(2, 0): 1, (1, 1): 3})
    assert f.expand() == {(2, 0): 1, (0, 2): 1, (1, 1): 3}
    assert f.evaluate([2, Fraction(1, 2)]) == 4 + Fraction(1, 4) + 3
    assert f.evaluate_float([1j, 1]) == pytest.approx(complex(-1 + 1 + 3j))
    laurent = SymFun(2, {(1, -1): 1})
    assert laurent.evaluate([2, 2]) == 2
    assert not laurent.is_polynomial()


def test_partial_laurent():
    f = SymFun(3, {(1, 0, 0): 1})
    assert f.partial_laurent(1) == {(1,): 1, (0,): 2}
    assert f.partial_laurent(3) == f.expand()
    with pytest.raises(JackkitError):
        f.partial_laurent(4)


def test_homogeneous_parts():
    f = SymFun(2, {(2, 0): 1, (1, 0): 1})
    assert f.degrees() == [1, 2]
    assert not f.is_homogeneous()
    assert f.homogeneous_part(1) == SymFun(2, {(1, 0): 1})


def test_json():
    f = SymFun(3, {(2, 1, -1): Fraction(-3, 4), (0, 0, 0): 2})
    data = f.to_json()
    assert [t["exp"] for t in data["terms"]] == [[2, 1, -1], [0, 0, 0]]
    assert SymFun.from_json(data) == f
    with pytest.raises(ParseError):
        SymFun.from_json({"n": 2, "terms": [{"exp": [1, 0]}]})
