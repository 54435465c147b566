#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from jackkit.errors import DeskScaleError, InterlacingError, TorusPointError
from jackkit.jack_engine import JackEngine, log_principal_special
from jackkit.partitions import hook_H, hook_Hprime, pad, partitions_up_to
from jackkit.symfun import SymFun, inner_product
from strategies import signatures, thetas

THETAS = [Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2)]


def test_single_box_and_shift():
    engine = JackEngine("1/2")
    assert engine.jack_P((1, 0, 0)) == SymFun(3, {(1, 0, 0): 1})
    assert engine.jack_P((1, 1)) == SymFun(2, {(1, 1): 1})
    assert engine.jack_P((0, -1)) == SymFun(2, {(0, -1): 1})


@pytest.mark.parametrize("theta", THETAS)
def test_two_box_row(theta):
    expected = SymFun(2, {(2, 0): 1, (1, 1): 2 * theta / (theta + 1)})
    assert JackEngine(theta).jack_P((2, 0)) == expected


def test_schur_case():
    engine = JackEngine(1)
    assert engine.jack_P((2, 1, 0)) == SymFun(3, {(2, 1, 0): 1, (1, 1, 1): 2})
    assert engine.principal_special((2, 1, 0)) == 8
    assert engine.gram_schmidt_oracle((2,), 2) == SymFun(2, {(2, 0): 1, (1, 1): 1})


@pytest.mark.parametrize("theta", THETAS)
def test_branching_matches_oracle(theta):
    engine = JackEngine(theta)
    for lam in partitions_up_to(4, max_parts=3):
        assert engine.jack_P(pad(lam, 3)) == engine.gram_schmidt_oracle(lam, 3), lam


@pytest.mark.slow
@pytest.mark.parametrize("theta", THETAS)
def test_branching_matches_oracle_full(theta):
    engine = JackEngine(theta)
    for lam in partitions_up_to(6, max_parts=4):
        assert engine.jack_P(pad(lam, 4)) == engine.gram_schmidt_oracle(lam, 4), lam


@pytest.mark.parametrize("theta", [Fraction(1, 2), Fraction(2)])
def test_norm(theta):
    engine = JackEngine(theta)
    for lam in [(1,), (2,), (1, 1), (2, 1), (1, 1, 1)]:
        P = engine.jack_P(pad(lam, 3))
        assert inner_product(P, P, theta) == hook_H(lam, theta) / hook_Hprime(lam, theta)
    # (P_{(1,1)}, P_{(1,1)}) = (1 + θ)/(2θ²)
    P11 = engine.jack_P((1, 1))
    assert inner_product(P11, P11, theta) == (1 + theta) / (2 * theta ** 2)


def test_oracle_weight_limit():
    with pytest.raises(DeskScaleError):
        JackEngine(1).gram_schmidt_oracle((9,), 1)


def test_psi():
    engine = JackEngine("1/2")
    assert engine.psi((2, 1, 0), (2, 1)) == 1
    with pytest.raises(InterlacingError):
        engine.psi((2, 1, 0), (0, 1))
    # ψ_{(2)/(0)}：P_{(2)}(x, 0) 的系数 x² 为 1
    assert engine.psi((2, 0), (0,)) == 1


@given(signatures(min_n=2, max_n=4))
@settings(max_examples=30, deadline=None)
def test_psi_is_one_for_schur(lam):
    engine = JackEngine(1)
    assert all(psi == 1 for _, psi in engine.branching_row(lam))


@given(signatures(max_n=4, bound=2), thetas)
@settings(max_examples=40, deadline=None)
def test_principal_closed_form_matches_chain_sum(lam, theta):
    engine = JackEngine(theta)
    c = max(0, -lam[-1])
    assert engine.principal_special(lam, validate=False) == engine.principal_special_chain_sum(
        tuple(p + c for p in lam))


def test_principal_special_examples():
    engine = JackEngine("2")
    assert engine.principal_special((0, 0, 0)) == 1
    assert engine.principal_special((1, 0, 0, 0)) == 4
    assert engine.principal_special((0, -1)) == 2


def test_log_principal_special():
    theta = Fraction(1, 2)
    lam = (3, 1, 0, -2)
    exact = JackEngine(theta).principal_special(lam)
    assert log_principal_special(lam, float(theta)) == pytest.approx(math.log(float(exact)), rel=1e-12)


def test_phi_eval():
    engine = JackEngine(1)
    assert engine.phi_eval((2, 1, -1), [1, 1]) == pytest.approx(1)
    assert engine.phi_eval((1, 0), [1j]) == pytest.approx((1j + 1) / 2)
    z = cmath.exp(0.3j)
    expected = (z * z + z) / 2
    assert engine.phi_eval((2, 1), [z]) == pytest.approx(expected)
    with pytest.raises(TorusPointError):
        engine.phi_eval((1, 0), [2])


@pytest.mark.parametrize("theta", THETAS)
def test_g_k(theta):
    engine = JackEngine(theta)
    assert engine.g_k(0, 3) == SymFun.one(3)
    assert engine.g_k(1, 3) == SymFun(3, {(1, 0, 0): theta})
    for k in range(4):
        assert engine.g_k(k, 3) == engine.g_k_explicit(k, 3)


def test_g_2_is_complete_homogeneous_for_schur():
    assert JackEngine(1).g_k(2, 2) == SymFun(2, {(2, 0): 1, (1, 1): 1})


@pytest.mark.parametrize("theta, n, m, degree", [
    (Fraction(1), 1, 1, 3),
    (Fraction(1, 2), 2, 2, 4),
    (Fraction(2), 2, 3, 3),
])
def test_cauchy(theta, n, m, degree):
    result = JackEngine(theta).cauchy_check(n, m, degree)
    assert result["success"], result
    assert result["counterexample"] is None
