#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
二项式公式
Φ_λ(z_1, …, z_k, 1, …, 1) = Σ_{ℓ(μ)≤k} Q*_μ(λ) P_μ(z_1−1, …, z_k−1) / (nθ)_μ
"""

import itertools
import logging
import math
from fractions import Fraction
from typing import Dict, Sequence, Tuple

from jackkit.errors import JackkitError, error_response, success_response
from jackkit.jack_engine import JackEngine
from jackkit.partitions import (
    as_signature,
    falling_factorial,
    format_parts,
    pad,
    partitions_up_to,
    shifted_factorial,
)
from jackkit.shifted_jack import ShiftedJackEngine

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


def binomial_expand(lam: Sequence[int], k: int, theta, D: int,
                    engine: ShiftedJackEngine = None) -> Dict[Tuple[int, ...], Fraction]:
    """
    二项式系数 Q*_μ(λ)/(nθ)_μ，ℓ(μ) ≤ k，|μ| ≤ D

    Args:
        lam: 长度为 n 的标号
        k: 活动变量个数，k ≤ n
        theta: θ
        D: 次数上界

    Returns:
        Dict: {μ: 系数}，μ 为去零的分拆
    """
    lam = as_signature(lam)
    n = len(lam)
    if not 0 <= k <= n:
        raise JackkitError(f"k = {k} 不在 [0, {n}] 内")
    engine = engine or ShiftedJackEngine(theta)
    coefficients = {}
    for mu in partitions_up_to(D, max_parts=k):
        value = engine.qstar_eval(mu, lam)
        if value:
            coefficients[mu] = value / shifted_factorial(n * engine.theta, mu, engine.theta)
    return coefficients


def _taylor_of_laurent(laurent: Dict[Monomial, Fraction], k: int, D: int) -> Dict[Monomial, Fraction]:
    """Σ c_a z^a 在 z = 1 + t 处展开，保留总次数 ≤ D 的项"""
    result: Dict[Monomial, Fraction] = {}
    for exps, coef in laurent.items():
        # (1 + t)^a = Σ_j a↓j / j! · t^j，对负 a 同样成立
        factors = [[Fraction(falling_factorial(a, j), math.factorial(j)) for j in range(D + 1)] for a in exps]
        for js in itertools.product(range(D + 1), repeat=k):
            if sum(js) > D:
                continue
            value = coef
            for factor, j in zip(factors, js):
                value *= factor[j]
                if not value:
                    break
            if value:
                result[js] = result.get(js, Fraction(0)) + value
    return {m: c for m, c in result.items() if c}


def _binomial_side(coefficients: Dict[Tuple[int, ...], Fraction], k: int,
                   jack: JackEngine) -> Dict[Monomial, Fraction]:
    """Σ_μ c_μ P_μ(t_1, …, t_k) 的普通单项式展开"""
    if k == 0:
        return {(): coefficients[()]} if coefficients.get(()) else {}
    result: Dict[Monomial, Fraction] = {}
    for mu, coef in coefficients.items():
        for exps, value in jack.jack_P(pad(mu, k)).expand().items():
            result[exps] = result.get(exps, Fraction(0)) + coef * value
    return {m: c for m, c in result.items() if c}


def _shift_to_z(poly_t: Dict[Monomial, Fraction], k: int) -> Dict[Monomial, Fraction]:
    """把 t_i = z_i − 1 代回，得到 z 的多项式"""
    result: Dict[Monomial, Fraction] = {}
    for exps, coef in poly_t.items():
        pieces = [[(i, Fraction(math.comb(e, i)) * (-1) ** (e - i)) for i in range(e + 1)] for e in exps]
        for choice in itertools.product(*pieces):
            z_exp = tuple(i for i, _ in choice)
            value = coef
            for _, c in choice:
                value *= c
            result[z_exp] = result.get(z_exp, Fraction(0)) + value
    return {m: c for m, c in result.items() if c}


def phi_laurent(lam: Sequence[int], k: int, jack: JackEngine) -> Dict[Monomial, Fraction]:
    """Φ_λ(z_1..z_k, 1..1) 的精确 Laurent 展开"""
    lam = as_signature(lam)
    principal = jack.principal_special(lam)
    return {e: c / principal for e, c in jack.jack_P(lam).partial_laurent(k).items()}


def binomial_check(lam: Sequence[int], k: int, theta, D: int = None) -> dict:
    """
    用二项式系数重建 Φ_λ

    分拆：D ≥ |λ| 时重建完整的多项式 Φ_λ(z_1..z_k, 1..1)；
    含负分量的标号：比较 z = 1 处总次数 ≤ D 的 Taylor 展开。

    Returns:
        Dict: 结果字典
    """
    lam = as_signature(lam)
    shifted = ShiftedJackEngine(theta)
    jack = shifted.jack
    is_partition = lam[-1] >= 0
    if D is None:
        if not is_partition:
            raise JackkitError("含负分量的标号必须给出次数上界 D")
        D = sum(lam)
    coefficients = binomial_expand(lam, k, theta, D, engine=shifted)
    series = _binomial_side(coefficients, k, jack)
    exact = phi_laurent(lam, k, jack)
    if is_partition and D >= sum(lam):
        left, right, mode = _shift_to_z(series, k), exact, "laurent"
    else:
        left, right, mode = series, _taylor_of_laurent(exact, k, D), "taylor"
    for mono in sorted(set(left) | set(right), reverse=True):
        if left.get(mono, 0) != right.get(mono, 0):
            return error_response(
                "二项式公式重建失败",
                counterexample={"lambda": list(lam), "k": k, "mode": mode, "monomial": list(mono),
                                "binomial": str(left.get(mono, 0)), "phi": str(right.get(mono, 0))})
    logger.debug("二项式公式成立: λ=%s, k=%d, 方式=%s", format_parts(lam), k, mode)
    return success_response(f"二项式公式成立（{mode}）: λ = {format_parts(lam)}, k = {k}",
                            mode=mode, terms=len(coefficients))
