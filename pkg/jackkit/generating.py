#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
生成函数恒等式
G(x;t) = ∏(1 − t x_i)^{−θ}，G*(x;u) = Σ g*_k(x) / (u(u−1)⋯(u−k+1))，
整数点处 G* 的有限乘积形式、标号分解以及卷积递推
"""

import logging
from fractions import Fraction
from typing import Dict, Sequence

import sympy

from jackkit.errors import NonIntegerPointError, error_response, success_response
from jackkit.partitions import as_signature, as_theta, format_parts, pad, split_signature
from jackkit.series import FormalSeries
from jackkit.shifted_jack import ShiftedJackEngine, gstar_value, variables
from jackkit.symfun import from_sympy_rational, to_sympy_rational

logger = logging.getLogger(__name__)


def gen_G(x: Sequence, theta, K: int) -> FormalSeries:
    """∏_i (1 − t x_i)^{−θ} 展开到 t^K"""
    theta = as_theta(theta)
    result = FormalSeries.constant(1, K)
    for xi in x:
        result = result * FormalSeries.binomial(-Fraction(xi), -theta, K)
    return result


def gen_Gstar(x: Sequence, theta, K: int) -> FormalSeries:
    """系数 g*_k(x), k ≤ K，下降阶乘基"""
    theta = as_theta(theta)
    return FormalSeries([gstar_value(k, x, theta) for k in range(K + 1)], K, var="ff")


def _require_integers(x: Sequence) -> None:
    for xi in x:
        if Fraction(xi).denominator != 1:
            raise NonIntegerPointError(f"乘积公式只对整数点成立: {xi}")


def _product_series(x: Sequence[int], theta: Fraction, K: int, sign: int = 1, offset=0) -> FormalSeries:
    """
    G*(x; σu + τ) 的乘积形式，展开为 s = 1/u 的级数

    第 i 个因子取 w = v + θ(i − 1)，v = σu + τ：
        x_i ≥ 0: ∏_{j=0}^{x_i−1} (w + θ − j)/(w − j)
        x_i < 0: ∏_{j=x_i}^{−1} (w − j)/(w + θ − j)
    每个 (σu + a)/(σu + b) 写成 (1 + σa·s)/(1 + σb·s)。
    """
    result = FormalSeries.constant(1, K, "1/u")
    for i, xi in enumerate(x, start=1):
        xi = int(xi)
        shift = offset + theta * (i - 1)
        if xi >= 0:
            pairs = [(shift + theta - j, shift - j) for j in range(xi)]
        else:
            pairs = [(shift - j, shift + theta - j) for j in range(xi, 0)]
        for a, b in pairs:
            result = result * FormalSeries.linear_ratio(sign * a, sign * b, K)
    return result


def gstar_product_formula(x: Sequence, n: int, theta, K: int) -> FormalSeries:
    """
    G*(x; u) 的有限乘积形式展开为 1/u 级数

    Args:
        x: 整数点，长度 ≤ n（不足补零）
        n: 变量个数
        theta: θ
        K: 截断阶

    Raises:
        NonIntegerPointError: 点含非整数坐标
    """
    theta = as_theta(theta)
    _require_integers(x)
    x = [int(Fraction(xi)) for xi in x]
    x = x + [0] * (n - len(x))
    return _product_series(x, theta, K)


def gstar_series_check(x: Sequence, n: int, theta, K: int) -> dict:
    """gen_Gstar 与乘积形式在 1/u 级数上逐项相等"""
    left = gen_Gstar(pad(x, n) if len(x) < n else x, theta, K).to_inverse_u()
    right = gstar_product_formula(x, n, theta, K)
    k = left.first_difference(right)
    if k is None:
        return success_response(f"G* 级数恒等式成立: x = {format_parts(x)}, K = {K}")
    return error_response("G* 级数与乘积形式不一致",
                          counterexample={"x": list(x), "n": n, "theta": str(theta), "order": k,
                                          "series": str(left[k]), "product": str(right[k])})


def gstar_signature_split(lam: Sequence[int], theta, K: int) -> dict:
    """
    校验 G*(λ; u) = G*(λ⁺; u) · G*(λ⁻; −u − θn − 1)

    左边同时与 gen_Gstar(λ) 比较，负坐标的 g*_k 也因此被校验。
    """
    theta = as_theta(theta)
    lam = as_signature(lam)
    n = len(lam)
    plus, minus = split_signature(lam)
    left = _product_series(lam, theta, K)
    right = _product_series(pad(plus, n), theta, K) * _product_series(pad(minus, n), theta, K,
                                                                     sign=-1, offset=-theta * n - 1)
    series = gen_Gstar(lam, theta, K).to_inverse_u()
    for name, other in (("λ⁺/λ⁻ 分解", right), ("g*_k 级数", series)):
        k = left.first_difference(other)
        if k is not None:
            return error_response(f"{name}与乘积形式不一致",
                                  counterexample={"lambda": list(lam), "theta": str(theta), "order": k,
                                                  "product": str(left[k]), "other": str(other[k])})
    return success_response(f"标号分解成立: λ = {format_parts(lam)}, K = {K}")


def convolution_recursion_check(x: Sequence, theta, K: int) -> dict:
    """
    校验卷积递推与比值恒等式

        g*_k(x_1..x_n) = Σ_{p+q=k} g*_p(x_1−q, …, x_{n−1}−q) g*_q(x_n)
        ∏_{i=1}^{n−1} (−u−θi+θ)_q / (−u−θi)_q = u↓q / (u + θ(n−1))↓q
    """
    theta = as_theta(theta)
    x = [Fraction(xi) for xi in x]
    n = len(x)
    if n < 2:
        return error_response("卷积递推需要 n ≥ 2")
    for k in range(K + 1):
        left = gstar_value(k, x, theta)
        right = sum((gstar_value(k - q, [xi - q for xi in x[:-1]], theta) * gstar_value(q, x[-1:], theta)
                     for q in range(k + 1)), Fraction(0))
        if left != right:
            return error_response("卷积递推不成立",
                                  counterexample={"x": [str(v) for v in x], "k": k,
                                                  "lhs": str(left), "rhs": str(right)})
    u = sympy.Symbol("u")
    th = to_sympy_rational(theta)
    for q in range(K + 1):
        lhs = sympy.Mul(*[sympy.rf(-u - th * i + th, q) / sympy.rf(-u - th * i, q) for i in range(1, n)])
        rhs = sympy.ff(u, q) / sympy.ff(u + th * (n - 1), q)
        if sympy.cancel(lhs - rhs) != 0:
            return error_response("比值恒等式不成立", counterexample={"n": n, "q": q, "theta": str(theta)})
    return success_response(f"卷积递推与比值恒等式成立到 K = {K}")


def gauss_summation_check(m: int, theta, K: int) -> dict:
    """
    n = 1 时的 Gauss 求和：Σ_k (θ)_k/k! · m↓k / u↓k 等于 Γ 比值的有限乘积形式
    """
    return gstar_series_check([m], 1, theta, K)


def degeneration_check(k: int, x: Sequence, theta) -> dict:
    """
    G(x; t) = lim_{a→∞} G*(ax; a/t)：g*_k(a·x) 中 a^k 的系数等于 g_k(x)
    """
    theta = as_theta(theta)
    n = len(x)
    a = sympy.Symbol("a")
    poly = ShiftedJackEngine(theta).gstar_poly(k, n).poly
    scaled = poly.as_expr().xreplace({g: a * to_sympy_rational(xi) for g, xi in zip(variables(n), x)})
    top = from_sympy_rational(sympy.Poly(sympy.expand(scaled), a).coeff_monomial(a ** k))
    expected = gen_G(x, theta, k)[k]
    if top != expected:
        return error_response("最高次退化不成立", counterexample={"k": k, "x": [str(v) for v in x],
                                                              "top": str(top), "g_k": str(expected)})
    return success_response(f"g*_{k} 的最高次项等于 g_{k}")

