#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import cmath
from fractions import Fraction

import numpy as np
import pytest

from jackkit.errors import JackkitError, TorusPointError
from jackkit.specializations import (
    SymmetricExpr,
    binomial_limit_coefficients,
    doubly_extended_special,
    energy_limit,
    extended_special,
    involution_check,
    limit_g,
    limit_phi,
    limit_phi_analytic,
    limit_phi_grid,
    limit_phi_multi,
    limit_power_sums,
    regularity_annulus,
    shifted_power_sum_limit,
    t_prime,
)
from jackkit.vk import VkParams

THETAS = [Fraction(1, 2), Fraction(1), Fraction(2)]
p, g = SymmetricExpr.p, SymmetricExpr.g


def test_extended_special_examples():
    a, b, gamma, theta = Fraction(1, 3), Fraction(2, 5), Fraction(1, 5), Fraction(1, 2)
    assert extended_special(p(1), alpha=[a]) == a
    assert extended_special(g(1), gamma=gamma, theta=theta) == theta * gamma
    assert extended_special(p(2), beta=[b], theta=theta) == -theta * b ** 2
    assert extended_special(p(1), alpha=[a], beta=[b], gamma=gamma, theta=theta) == a + b + gamma


@pytest.mark.parametrize("theta", THETAS)
def test_doubly_extended_reduces_to_one_side(theta):
    params = VkParams(alpha_plus=["1/2"], beta_plus=["1/3"], gamma_plus="1/5")
    for f in [g(1), g(2), g(1, 1), g(3), p(2), p(3), p(2, 1)]:
        one_side = extended_special(f, ["1/2"], ["1/3"], Fraction(1, 5), theta)
        assert doubly_extended_special(f, params, theta) == one_side, f


def test_doubly_extended_zero_params():
    params = VkParams()
    assert doubly_extended_special(g(), params, "1/2") == 1
    assert limit_g(params, "1/2", 4) == [1, 0, 0, 0, 0]


def test_doubly_extended_examples():
    a = Fraction(2, 7)
    assert doubly_extended_special(g(1), VkParams(alpha_plus=[a]), 1) == a
    both = VkParams(alpha_plus=["1/2"], alpha_minus=["1/3"])
    assert doubly_extended_special(p(1), both, "1/2") == Fraction(1, 6)
    with pytest.raises(JackkitError):
        doubly_extended_special(p(3), both, 1, K=2)


@pytest.mark.parametrize("theta", THETAS)
def test_minus_side_power_sums(theta):
    a = Fraction(1, 3)
    power_sums = limit_power_sums(VkParams(alpha_minus=[a]), theta, 2)
    assert power_sums[1] == -a
    assert power_sums[2] == a ** 2 + 2 * a * theta


@pytest.mark.parametrize("theta", THETAS)
def test_t_prime_is_involution(theta):
    assert involution_check(theta, 6)["success"]
    assert t_prime(theta, 3).coefs == [0, -1, theta, -theta ** 2]


def test_limit_phi_examples():
    a = 0.3
    row = VkParams(alpha_plus=[a])
    assert limit_phi(row, 1, 1) == pytest.approx(1)
    assert limit_phi(VkParams(), "1/2", cmath.exp(1.1j)) == pytest.approx(1)
    assert limit_phi(row, 1, -1) == pytest.approx(1 / (1 + 2 * a))
    z = cmath.exp(0.7j)
    assert limit_phi(VkParams(beta_plus=[1]), "1/2", z) == pytest.approx(z)


def test_limit_phi_sides_are_mirrored():
    z = cmath.exp(0.4j)
    plus = limit_phi(VkParams(alpha_plus=[0.5], gamma_plus=0.2), 2, z)
    minus = limit_phi(VkParams(alpha_minus=[0.5], gamma_minus=0.2), 2, 1 / z)
    assert plus == pytest.approx(minus)


def test_limit_phi_domain():
    row = VkParams(alpha_plus=["1/2"], alpha_minus=["1/3"])
    assert regularity_annulus(row, 1) == pytest.approx((0.25, 3.0))
    assert regularity_annulus(VkParams(), 1) == (0.0, float("inf"))
    assert limit_phi_analytic(row, 1, 2) == pytest.approx(limit_phi_analytic(row, 1, 2 + 0j))
    with pytest.raises(JackkitError):
        limit_phi_analytic(row, 1, 10)
    with pytest.raises(TorusPointError):
        limit_phi(row, 1, 2)


def test_limit_phi_multi_and_grid():
    params = VkParams(alpha_plus=["1/2"])
    zs = [cmath.exp(0.5j), cmath.exp(-1.2j)]
    product = limit_phi(params, 1, zs[0]) * limit_phi(params, 1, zs[1])
    assert limit_phi_multi(params, 1, zs) == pytest.approx(product)
    values = limit_phi_grid(params, 1, np.array([zs, zs]))
    assert values.shape == (2,)
    assert values[1] == pytest.approx(product)


@pytest.mark.parametrize("theta", THETAS)
def test_energy_limit(theta):
    a = Fraction(1, 2)
    assert energy_limit(VkParams(alpha_plus=[a]), theta) == a ** 2 / 2 + theta * a
    assert energy_limit(VkParams(alpha_minus=[a]), theta) == a ** 2 / 2


def test_shifted_power_sum_limit():
    a = Fraction(2, 3)
    assert shifted_power_sum_limit(1, VkParams(alpha_plus=[a]), "1/2") == a
    assert shifted_power_sum_limit(2, VkParams(alpha_plus=[a]), "1/2") == a ** 2


@pytest.mark.parametrize("theta", THETAS)
def test_binomial_limit(theta):
    zero = binomial_limit_coefficients(VkParams(), theta, 2)
    assert zero[()] == 1
    assert all(value == 0 for mu, value in zero.items() if mu)
    a = Fraction(1, 4)
    row = binomial_limit_coefficients(VkParams(alpha_plus=[a]), theta, 1)
    assert row[(1,)] == a


def test_symmetric_expr():
    f = SymmetricExpr("p", {(2, 1): "1/2", (3,): 2})
    assert f.degree == 3
    assert SymmetricExpr.from_dict(f.to_dict()) == f
    assert f.evaluate([0, 2, 3, 5]) == Fraction(1, 2) * 3 * 2 + 2 * 5
    with pytest.raises(JackkitError):
        SymmetricExpr("e", {(1,): 1})
