#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
恒等式套件
每个套件在一组小实例上调用各模块的校验函数，返回统一的结果字典；遇到第一个失败即停止
"""

import logging
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable

from jackkit.binomial import binomial_check
from jackkit.errors import JackkitError, error_response, success_response
from jackkit.generating import (
    convolution_recursion_check,
    degeneration_check,
    gauss_summation_check,
    gstar_series_check,
    gstar_signature_split,
)
from jackkit.jack_engine import JackEngine
from jackkit.links import one_point_consistency_check, projection_check, stochasticity_check
from jackkit.measures import (
    factorial_moment_check,
    linear_bound_check,
    linear_bound_extreme_check,
    second_moment_check,
    split_weight_bound,
)
from jackkit.partitions import (
    as_theta,
    conjugate,
    contains,
    format_rational,
    hook_H,
    hook_Hprime,
    pad,
    partitions_up_to,
    signatures_in_box,
)
from jackkit.shifted_jack import ShiftedJackEngine
from jackkit.specializations import involution_check
from jackkit.symfun import inner_product

logger = logging.getLogger(__name__)


def _collect(name: str, results: Iterable[dict]) -> dict:
    """依次消费结果，返回第一个失败或汇总的成功"""
    checked = 0
    for result in results:
        if not result["success"]:
            result["suite"] = name
            result["checked"] = checked
            logger.warning("套件 %s 失败: %s", name, result["message"])
            return result
        checked += 1
    logger.info("套件 %s 通过 %d 项检查", name, checked)
    return success_response(f"{name}: {checked} 项检查全部通过", suite=name, checked=checked)


def _signatures(n_max: int, bound: int):
    for n in range(1, n_max + 1):
        yield from signatures_in_box(n, -bound, bound)


# ---------------------------------------------------------------------------
# 套件
# ---------------------------------------------------------------------------

def cauchy_suite(theta, n: int = 2, m: int = 2, degree: int = 3) -> dict:
    return _collect("cauchy", [JackEngine(theta).cauchy_check(n, m, degree)])


def oracle_suite(theta, max_weight: int = 4, n: int = 3) -> dict:
    """分支规则与 Gram–Schmidt 预言机逐项相等，g_k 的两种算法相等"""
    engine = JackEngine(theta)

    def results():
        for lam in partitions_up_to(max_weight, max_parts=n):
            branching = engine.jack_P(pad(lam, n))
            oracle = engine.gram_schmidt_oracle(lam, n)
            if branching != oracle:
                yield error_response("分支规则与 Gram–Schmidt 不一致",
                                     counterexample={"lambda": list(lam), "n": n,
                                                     "branching": branching.to_json(), "oracle": oracle.to_json()})
            else:
                yield success_response()
        for k in range(max_weight + 1):
            if engine.g_k(k, n) != engine.g_k_explicit(k, n):
                yield error_response("g_k 两种算法不一致", counterexample={"k": k, "n": n})
            else:
                yield success_response()

    return _collect("oracle", results())


def norm_suite(theta, max_weight: int = 4) -> dict:
    """
    (P_λ, P_μ) = δ_{λμ} H(λ)/H′(λ)；θ = 1 时 H = H′；H(λ′; θ) = θ^{|λ|} H′(λ; 1/θ)
    """
    theta = as_theta(theta)
    engine = JackEngine(theta)

    def results():
        for d in range(1, max_weight + 1):
            shapes = [lam for lam in partitions_up_to(d) if sum(lam) == d]
            polys = {lam: engine.jack_P(pad(lam, d)) for lam in shapes}
            for lam in shapes:
                for mu in shapes:
                    value = inner_product(polys[lam], polys[mu], theta)
                    expected = hook_H(lam, theta) / hook_Hprime(lam, theta) if lam == mu else 0
                    if value != expected:
                        yield error_response("Jack 多项式的范数或正交性不成立",
                                             counterexample={"lambda": list(lam), "mu": list(mu),
                                                             "inner": str(value), "expected": str(expected)})
                    else:
                        yield success_response()
        for lam in partitions_up_to(max_weight):
            if hook_H(lam, 1) != hook_Hprime(lam, 1):
                yield error_response("θ = 1 时 H ≠ H′", counterexample={"lambda": list(lam)})
            elif hook_H(conjugate(lam), theta) != theta ** sum(lam) * hook_Hprime(lam, 1 / theta):
                yield error_response("共轭对偶不成立", counterexample={"lambda": list(lam)})
            else:
                yield success_response()

    return _collect("norm", results())


def pstar_suite(theta, max_weight: int = 3, n: int = 3) -> dict:
    """
    插值刻画、最高次项、移位对称性、稳定性；θ = 1 时与移位 Schur 行列式比较

    P*_μ(μ) = H(μ)；μ ⊄ λ 或 |λ| ≤ |μ|（λ ≠ μ）时 P*_μ(λ) = 0。
    其余点的值由插值预言机的比较覆盖。
    """
    shifted = ShiftedJackEngine(theta)
    points = partitions_up_to(max_weight, max_parts=n)

    def results():
        for mu in points:
            poly = shifted.pstar(mu, n)
            for lam in points:
                if lam == mu:
                    expected = hook_H(mu, shifted.theta)
                elif not contains(mu, lam) or sum(lam) <= sum(mu):
                    expected = 0
                else:
                    continue
                point = pad(lam, n)
                value = poly(point)
                if value != expected:
                    yield error_response("插值条件不成立",
                                         counterexample={"mu": list(mu), "point": list(point), "value": str(value)})
                    return
            checks = [
                ("最高次项不等于 P_μ", poly.top_term() == shifted.jack.jack_P(pad(mu, n))),
                ("不是移位对称的", poly.is_shifted_symmetric()),
                ("插值预言机不一致", poly == shifted.interpolation_oracle(mu, n)),
            ]
            if n > len(mu) and n > 1:
                checks.append(("x_n = 0 限制不稳定", poly.restrict_last_zero() == shifted.pstar(mu, n - 1)))
            if shifted.theta == 1:
                checks.append(("与移位 Schur 行列式不一致", poly == shifted.shifted_schur(mu, n)))
            for message, ok in checks:
                yield success_response() if ok else error_response(message, counterexample={"mu": list(mu), "n": n})

    return _collect("pstar", results())


def binomial_suite(theta, n_max: int = 3, bound: int = 2) -> dict:
    """分拆重建完整 Laurent 多项式，含负分量的标号比较 Taylor 展开"""

    def results():
        for lam in _signatures(n_max, bound):
            for k in range(1, len(lam) + 1):
                if lam[-1] >= 0:
                    yield binomial_check(lam, k, theta)
                else:
                    yield binomial_check(lam, k, theta, D=2)

    return _collect("binomial", results())


def series_suite(theta, n_max: int = 3, bound: int = 2, K: int = 5) -> dict:
    """G* 的乘积形式、标号分解、卷积递推、Gauss 求和、最高次退化与 t′ 对合"""

    def results():
        for lam in _signatures(n_max, bound):
            yield gstar_series_check(lam, len(lam), theta, K)
            yield gstar_signature_split(lam, theta, K)
            if len(lam) >= 2:
                yield convolution_recursion_check(lam, theta, min(K, 3))
        for m in range(-bound, bound + 1):
            yield gauss_summation_check(m, theta, K)
        for k in range(1, 4):
            yield degeneration_check(k, [Fraction(1), Fraction(1, 2), Fraction(-2)], theta)
        yield involution_check(theta, K)

    return _collect("series", results())


def moments_suite(theta, n_max: int = 4, bound: int = 2) -> dict:
    """二阶矩与阶乘矩"""
    engine = JackEngine(theta)

    def results():
        for lam in _signatures(n_max, bound):
            yield second_moment_check(lam, theta, engine)
            yield factorial_moment_check(lam, theta, 4, engine)
            yield split_weight_bound(lam)

    return _collect("moments", results())


def links_suite(theta, n_max: int = 4, bound: int = 2) -> dict:
    """链接随机性、一点测度一致性与投影"""
    engine = JackEngine(theta)

    def results():
        for lam in _signatures(n_max, bound):
            if len(lam) < 2:
                continue
            yield stochasticity_check(lam, theta, engine)
            yield one_point_consistency_check(lam, theta, engine)
            for k in range(1, len(lam)):
                yield projection_check(lam, k, theta, engine)

    return _collect("links", results())


def linear_bound_suite(n_max: int = 6, m: int = 4, bound: int = 3) -> dict:
    """线性泛函不等式：整数标号穷举与单纯形顶点，指数取 0..m"""

    def results():
        for lam in _signatures(n_max, bound):
            for power in range(m + 1):
                if not linear_bound_check(lam, power):
                    yield error_response("线性泛函不等式不成立", counterexample={"lambda": list(lam), "m": power})
                else:
                    yield success_response()
        for n in range(2, n_max + 1):
            for power in range(m + 1):
                yield linear_bound_extreme_check(n, power)

    return _collect("linear_bound", results())


def principal_suite(theta, n_max: int = 4, bound: int = 3) -> dict:
    """主特化闭式与链求和"""
    engine = JackEngine(theta)

    def results():
        for lam in _signatures(n_max, bound):
            closed = engine.principal_special(lam, validate=False)
            c = max(0, -lam[-1])
            chain = engine.principal_special_chain_sum(tuple(p + c for p in lam))
            if closed != chain:
                yield error_response("主特化闭式与链求和不一致",
                                     counterexample={"lambda": list(lam), "closed": format_rational(closed),
                                                     "chain": format_rational(chain)})
            else:
                yield success_response()

    return _collect("principal", results())


def smoke_suite(theta) -> dict:
    """每个套件的最小实例"""
    results = [
        cauchy_suite(theta, 2, 2, 2),
        oracle_suite(theta, 2, 2),
        norm_suite(theta, 2),
        pstar_suite(theta, 2, 2),
        binomial_suite(theta, 2, 1),
        series_suite(theta, 2, 1, 3),
        moments_suite(theta, 2, 1),
        links_suite(theta, 3, 1),
        linear_bound_suite(3, 2, 1),
        principal_suite(theta, 3, 1),
    ]
    return _collect("smoke", results)


SUITES: Dict[str, Callable[..., dict]] = {
    "cauchy": cauchy_suite,
    "oracle": oracle_suite,
    "norm": norm_suite,
    "pstar": pstar_suite,
    "binomial": binomial_suite,
    "series": series_suite,
    "moments": moments_suite,
    "links": links_suite,
    "linear_bound": linear_bound_suite,
    "principal": principal_suite,
    "smoke": smoke_suite,
}


def run_suite(name: str, theta="1", **params: Any) -> dict:
    """
    运行指定套件

    Args:
        name: 套件名
        theta: θ（linear_bound 套件不使用）
        **params: 套件参数

    Returns:
        Dict: 结果字典

    Raises:
        JackkitError: 未知套件
    """
    suite = SUITES.get(name)
    if suite is None:
        raise JackkitError(f"未知套件: {name}（可用: {', '.join(SUITES)}）")
    theta = as_theta(theta)
    logger.info("运行套件 %s, θ = %s, 参数 %s", name, format_rational(theta), params)
    if name == "linear_bound":
        return suite(**params)
    return suite(theta, **params)
