#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
扩展特化与极限函数
Λ 在 VK 参数处的（双边）扩展特化、一点极限函数 φ_{α,β,γ}(z) 及其多点乘积、
二项式系数的极限以及能量、移位幂和等稳定观测量的极限
"""

import cmath
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from jackkit.engine_config import get_tolerance
from jackkit.errors import JackkitError, TorusPointError, error_response, success_response
from jackkit.jack_engine import JackEngine
from jackkit.partitions import as_partition, as_theta, format_rational, pad, parse_rational, partitions_up_to
from jackkit.series import FormalSeries
from jackkit.symfun import to_power_sums
from jackkit.vk import VkParams

logger = logging.getLogger(__name__)

BASES = ("p", "g")


@dataclass
class SymmetricExpr:
    """
    Λ 中的元素，写成 p_ρ 或 g_ρ = ∏g_{ρ_i} 的线性组合

    terms 的键为分拆 ρ（() 表示常数 1）。
    """
    basis: str
    terms: Dict[Tuple[int, ...], Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in BASES:
            raise JackkitError(f"未知的基: {self.basis}")
        self.terms = {as_partition(rho): Fraction(c) if isinstance(c, (int, str)) and not isinstance(c, bool) else c
                      for rho, c in self.terms.items() if c}

    @classmethod
    def p(cls, *rho: int) -> "SymmetricExpr":
        return cls("p", {tuple(rho): 1})

    @classmethod
    def g(cls, *rho: int) -> "SymmetricExpr":
        return cls("g", {tuple(rho): 1})

    @property
    def degree(self) -> int:
        return max((sum(rho) for rho in self.terms), default=0)

    def evaluate(self, values: Sequence) -> Any:
        """values[k] 为 p_k（或 g_k）的取值，values[0] 不使用"""
        total = 0
        for rho, coef in self.terms.items():
            term = coef
            for part in rho:
                term = term * values[part]
            total = total + term
        return total

    def to_dict(self) -> Dict[str, Any]:
        return {"basis": self.basis,
                "terms": [{"rho": list(rho), "coef": format_rational(c) if isinstance(c, Fraction) else c}
                          for rho, c in sorted(self.terms.items())]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SymmetricExpr":
        terms = {}
        for item in data.get("terms", []):
            coef = item["coef"]
            terms[tuple(item["rho"])] = parse_rational(coef) if isinstance(coef, str) else coef
        return cls(data["basis"], terms)


# ---------------------------------------------------------------------------
# 生成函数 G(t) 的特化
# ---------------------------------------------------------------------------

def side_series(alpha: Sequence, beta: Sequence, gamma, theta, K: int) -> FormalSeries:
    """e^{γθt} ∏(1 + θβ_i t) / (1 − α_i t)^θ 展开到 t^K"""
    theta = as_theta(theta)
    series = FormalSeries.exponential(gamma * theta, K)
    for a in alpha:
        series = series * FormalSeries.binomial(-a, -theta, K)
    for b in beta:
        series = series * FormalSeries([1, theta * b], K)
    return series


def t_prime(theta, K: int) -> FormalSeries:
    """t′ = −t/(1 + θt)"""
    theta = as_theta(theta)
    return FormalSeries([0] + [-(-theta) ** (k - 1) for k in range(1, K + 1)], K)


def involution_check(theta, K: int) -> dict:
    """(1 + θt)(1 + θt′) = 1 作为级数恒等式"""
    theta = as_theta(theta)
    product = FormalSeries([1, theta], K) * (t_prime(theta, K) * theta + 1)
    k = product.first_difference(FormalSeries.constant(1, K))
    if k is None:
        return success_response(f"(1 + θt)(1 + θt′) = 1 到 t^{K} 成立")
    return error_response("t′ 对合恒等式不成立", counterexample={"order": k, "value": str(product[k])})


def doubly_extended_series(params: VkParams, theta, K: int) -> FormalSeries:
    """
    双边扩展特化下的 G(t) = Σ g(k) t^k

    G(t) = [+ 侧](t) · [− 侧](t′)
    """
    plus = side_series(*params.side(1), theta, K)
    minus = side_series(*params.side(-1), theta, K)
    return plus * minus.compose(t_prime(theta, K))


def _power_sums_from_series(series: FormalSeries, theta, K: int) -> list:
    """p_k = (k/θ)·[t^k] log G"""
    logs = series.log()
    return [0] + [logs[k] * k / theta for k in range(1, K + 1)]


def extended_power_sums(alpha: Sequence, beta: Sequence, gamma, theta, K: int) -> list:
    """p_1 ↦ Σα + Σβ + γ，p_k ↦ Σα^k + (−θ)^{k−1}Σβ^k"""
    theta = as_theta(theta)
    values = [0]
    for k in range(1, K + 1):
        value = sum((a ** k for a in alpha), 0) + (-theta) ** (k - 1) * sum((b ** k for b in beta), 0)
        values.append(value + gamma if k == 1 else value)
    return values


def extended_special(f: SymmetricExpr, alpha: Sequence = (), beta: Sequence = (), gamma=0, theta=1) -> Any:
    """
    单边扩展特化 f(α; β; γ; θ)

    Args:
        f: p 基或 g 基下的对称函数
        alpha, beta: 有限非负列表
        gamma: γ ≥ 0
        theta: θ

    Returns:
        与参数同类型的数值（参数为有理数时为 Fraction）
    """
    K = max(f.degree, 1)
    params = VkParams(alpha_plus=list(alpha), beta_plus=list(beta), gamma_plus=gamma)
    alpha, beta, gamma = params.side(1)
    if f.basis == "p":
        return f.evaluate(extended_power_sums(alpha, beta, gamma, theta, K))
    return f.evaluate(side_series(alpha, beta, gamma, theta, K).coefs)


def doubly_extended_special(f: SymmetricExpr, params: VkParams, theta, K: int = None) -> Any:
    """
    双边扩展特化：g_k ↦ [t^k]G，p_k ↦ (k/θ)[t^k] log G

    Args:
        f: p 基或 g 基下的对称函数
        params: VK 参数
        theta: θ
        K: 级数截断阶，默认为 f 的次数

    Raises:
        JackkitError: K 小于 f 的次数
    """
    theta = as_theta(theta)
    K = max(f.degree, 1) if K is None else K
    if K < f.degree:
        raise JackkitError(f"截断阶 K = {K} 小于次数 {f.degree}")
    series = doubly_extended_series(params, theta, K)
    if f.basis == "g":
        return f.evaluate(series.coefs)
    return f.evaluate(_power_sums_from_series(series, theta, K))


def limit_g(params: VkParams, theta, K: int) -> list:
    """g(0), …, g(K)"""
    return list(doubly_extended_series(params, theta, K).coefs)


def limit_power_sums(params: VkParams, theta, K: int) -> list:
    """双边特化下的 p_0（占位）, p_1, …, p_K"""
    return _power_sums_from_series(doubly_extended_series(params, theta, K), as_theta(theta), K)


# ---------------------------------------------------------------------------
# 极限函数
# ---------------------------------------------------------------------------

def _side_factor(alpha, beta, gamma, theta: float, w: complex) -> complex:
    """e^{γw} ∏(1 + β_i w)/(1 − α_i w/θ)^θ，w = z − 1 或 z⁻¹ − 1"""
    value = cmath.exp(float(gamma) * w)
    for b in beta:
        value *= 1 + float(b) * w
    for a in alpha:
        value *= (1 - float(a) * w / theta) ** (-theta)
    return value


def limit_phi_analytic(params: VkParams, theta, z: complex) -> complex:
    """
    φ_{α,β,γ}(z) 在正则环 regularity_annulus 内的解析延拓

    Raises:
        JackkitError: z 不在正则环内
    """
    inner, outer = regularity_annulus(params, theta)
    if not inner < abs(z) < outer:
        raise JackkitError(f"|z| = {abs(z)} 不在正则环 ({inner}, {outer}) 内")
    th = float(theta)
    z = complex(z)
    return _side_factor(*params.side(1), th, z - 1) * _side_factor(*params.side(-1), th, 1 / z - 1)


def limit_phi(params: VkParams, theta, z: complex) -> complex:
    """
    一点极限函数 φ_{α,β,γ}(z)，z 在单位圆上

    Raises:
        TorusPointError: ||z| − 1| 超过容差
    """
    if abs(abs(z) - 1) > get_tolerance("torus"):
        raise TorusPointError(f"点 {z} 不在单位圆上")
    return limit_phi_analytic(params, theta, z)


def limit_phi_multi(params: VkParams, theta, zs: Sequence[complex]) -> complex:
    """Φ_{α,β,γ}(z_1, …, z_k) = ∏ φ(z_j)"""
    value = 1 + 0j
    for z in zs:
        value *= limit_phi(params, theta, z)
    return value


def limit_phi_grid(params: VkParams, theta, points: np.ndarray) -> np.ndarray:
    """对形状 (m, k) 的点阵逐行求多点极限函数"""
    points = np.atleast_2d(points)
    return np.array([limit_phi_multi(params, theta, row) for row in points], dtype=complex)


def regularity_annulus(params: VkParams, theta) -> Tuple[float, float]:
    """
    φ 的正则环 α⁻₁/(θ + α⁻₁) < |z| < (θ + α⁺₁)/α⁺₁

    无 α⁺ 时外半径为 ∞；无 α⁻ 且 γ⁻ = 0 时内半径为 0。
    """
    th = float(theta)
    a_plus = float(params.alpha_plus[0]) if params.alpha_plus else 0.0
    a_minus = float(params.alpha_minus[0]) if params.alpha_minus else 0.0
    outer = (th + a_plus) / a_plus if a_plus > 0 else math.inf
    inner = a_minus / (th + a_minus)
    return inner, outer


# ---------------------------------------------------------------------------
# 稳定观测量的极限
# ---------------------------------------------------------------------------

def binomial_limit_coefficients(params: VkParams, theta, D: int, k: int = None,
                                engine: JackEngine = None) -> Dict[Tuple[int, ...], Any]:
    """
    二项式系数 Q*_μ(λ(n))/(nθ)_μ 的极限 θ^{−|μ|} Q_μ(α⁺;β⁺;γ⁺ / α⁻;β⁻;γ⁻)

    Args:
        D: |μ| 上界
        k: ℓ(μ) 上界，默认不限
    """
    theta = as_theta(theta)
    engine = engine or JackEngine(theta)
    power_sums = limit_power_sums(params, theta, max(D, 1))
    result = {(): Fraction(1)}
    for mu in partitions_up_to(D, max_parts=k):
        if not mu:
            continue
        d = sum(mu)
        coords = to_power_sums(engine.jack_Q(pad(mu, d)))
        value = SymmetricExpr("p", coords).evaluate(power_sums)
        result[mu] = value / theta ** d
    return result


def energy_limit(params: VkParams, theta) -> Any:
    """E(λ(n))/n² 的极限 ½p_2 + θp_1"""
    theta = as_theta(theta)
    p = limit_power_sums(params, theta, 2)
    return p[2] / 2 + theta * p[1]


def shifted_power_sum_limit(m: int, params: VkParams, theta) -> Any:
    """p*_m(λ(n))/n^m 的极限 p_m"""
    return limit_power_sums(params, theta, m)[m]
