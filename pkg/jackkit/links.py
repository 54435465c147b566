#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
链接与投影
ω(μ, λ) = ψ_{λ/μ} P_μ(1ⁿ⁻¹) / P_λ(1ⁿ) 为 Φ_λ(z_1..z_{n−1}, 1) 按 Φ_μ 展开的系数；
迭代得到投影 Proj^n_k δ_λ，一步得到一点测度 M_n
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
from scipy.special import gammaln

from jackkit.engine_config import get_limit, get_tolerance
from jackkit.errors import DeskScaleError, JackkitError, ParseError, error_response, success_response
from jackkit.jack_engine import JackEngine, log_principal_special, pair_log_factor
from jackkit.measures import DiscreteMeasure, measure_from_phi
from jackkit.partitions import as_signature, count_children, format_parts, format_rational, parse_rational

logger = logging.getLogger(__name__)

Signature = Tuple[int, ...]


@dataclass
class BranchingRow:
    """父标号 λ 与全部 (μ, ω(μ, λ))"""
    parent: Signature
    children: List[Tuple[Signature, Any]] = field(default_factory=list)

    def total(self) -> Any:
        return sum((w for _, w in self.children), Fraction(0))

    def is_stochastic(self) -> bool:
        return all(0 <= w <= 1 for _, w in self.children) and self.total() == 1

    def as_dict(self) -> Dict[Signature, Any]:
        return dict(self.children)

    def to_dict(self) -> Dict[str, Any]:
        return {"parent": list(self.parent),
                "children": [{"mu": list(mu), "weight": format_rational(w)} for mu, w in self.children]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BranchingRow":
        try:
            children = [(tuple(c["mu"]), parse_rational(c["weight"])) for c in data["children"]]
            return cls(tuple(data["parent"]), children)
        except (KeyError, TypeError) as e:
            raise ParseError(f"BranchingRow JSON 格式错误: {e}") from None


def _require_link(lam: Signature) -> None:
    if len(lam) < 2:
        raise JackkitError("链接需要 n ≥ 2")


def link_weights(lam: Sequence[int], theta, engine: JackEngine = None) -> BranchingRow:
    """
    链接系数 ω(μ, λ)，μ 取遍与 λ 交错的长度 n − 1 标号

    Args:
        lam: 长度 n ≥ 2 的标号
        theta: θ
        engine: 可复用的 JackEngine

    Returns:
        BranchingRow: 精确权重，和为 1
    """
    lam = as_signature(lam)
    _require_link(lam)
    engine = engine or JackEngine(theta)
    parent = engine.principal_special(lam)
    children = [(mu, psi * engine.principal_special(mu) / parent) for mu, psi in engine.branching_row(lam)]
    return BranchingRow(lam, children)


def project_delta(lam: Sequence[int], k: int, theta, engine: JackEngine = None) -> Dict[Signature, Fraction]:
    """
    Proj^n_k δ_λ：迭代链接到长度 k

    Args:
        lam: 长度为 n 的标号
        k: 目标长度，1 ≤ k ≤ n

    Returns:
        Dict: {ν: 权重}，ν 为长度 k 的标号
    """
    lam = as_signature(lam)
    n = len(lam)
    if not 1 <= k <= n:
        raise JackkitError(f"k = {k} 不在 [1, {n}] 内")
    engine = engine or JackEngine(theta)
    state: Dict[Signature, Fraction] = {lam: Fraction(1)}
    rows: Dict[Signature, BranchingRow] = {}
    for level in range(n, k, -1):
        nxt: Dict[Signature, Fraction] = {}
        for nu, weight in state.items():
            row = rows.get(nu)
            if row is None:
                row = rows[nu] = link_weights(nu, theta, engine)
            for mu, w in row.children:
                if w:
                    nxt[mu] = nxt.get(mu, Fraction(0)) + weight * w
        state = nxt
        logger.debug("投影到长度 %d: %d 个状态", level - 1, len(state))
    return dict(sorted(state.items(), reverse=True))


def one_point_measure(lam: Sequence[int], theta, engine: JackEngine = None) -> DiscreteMeasure:
    """M_n 的质量 Σ_{μ: |λ|−|μ|=ξ} ω(μ, λ)，单步链接"""
    lam = as_signature(lam)
    if len(lam) == 1:
        return DiscreteMeasure.point_mass(lam[0])
    total = sum(lam)
    masses: Dict[int, Fraction] = {}
    for mu, w in link_weights(lam, theta, engine).children:
        xi = total - sum(mu)
        masses[xi] = masses.get(xi, Fraction(0)) + w
    return DiscreteMeasure(masses)


def multi_point_phi(lam: Sequence[int], zs: Sequence[complex], theta, engine: JackEngine = None) -> complex:
    """
    Φ_λ(z_1, …, z_k, 1, …, 1) = Σ_ν Proj^n_k δ_λ(ν) Φ_ν(z_1, …, z_k)

    分布是精确的，Φ_ν 用双精度求值。
    """
    lam = as_signature(lam)
    engine = engine or JackEngine(theta)
    k = len(zs)
    if k == 0:
        return 1 + 0j
    if k == len(lam):
        return engine.phi_eval(lam, zs)
    return sum((float(w) * engine.phi_eval(nu, zs) for nu, w in project_delta(lam, k, theta, engine).items()), 0j)


# ---------------------------------------------------------------------------
# 大 n 的浮点一点测度
# ---------------------------------------------------------------------------

def _log_pochhammer(x: np.ndarray, m: float) -> np.ndarray:
    return gammaln(x + m) - gammaln(x)


def _log_psi(lam: np.ndarray, mu: np.ndarray, active: np.ndarray, theta: float) -> float:
    """log ψ_{λ/μ}；只有 μ_j ≠ λ_{j+1} 的 j 贡献因子"""
    total = 0.0
    for j in active:
        m = mu[j] - lam[j + 1]
        i = np.arange(j + 1)
        gap = theta * (j - i)
        base_mu = mu[i] - mu[j] + gap
        base_lam = lam[i] - mu[j] + gap
        total += np.sum(_log_pochhammer(base_mu + theta, m) - _log_pochhammer(base_mu + 1, m)
                        + _log_pochhammer(base_lam + 1, m) - _log_pochhammer(base_lam + theta, m))
    return float(total)


def _touching_pairs_log(vec: np.ndarray, active: np.ndarray, theta: float) -> float:
    """至少一端在 active 中的数对 (i < j) 上 log[(θ(r+1))_d/(θr)_d] 之和"""
    size = len(vec)
    idx = np.arange(size)
    total = 0.0
    for a in active:
        others = idx[idx != a]
        lo = np.minimum(others, a)
        hi = np.maximum(others, a)
        total += np.sum(pair_log_factor(vec[lo] - vec[hi], (hi - lo).astype(float), theta))
    # active 内部的数对被计了两次
    for a, b in itertools.combinations(sorted(active), 2):
        total -= float(pair_log_factor(np.array([vec[a] - vec[b]]), np.array([float(b - a)]), theta)[0])
    return total


def float_one_point_measure(lam: Sequence[int], theta) -> DiscreteMeasure:
    """
    大 n 时的一点测度，双精度

    子标号 μ 相对 ν = (λ_2, …, λ_n) 只在少数坐标上不同，log ψ 与 log P_μ(1ⁿ⁻¹) 都只在这些坐标上增量更新。

    Raises:
        DeskScaleError: 子标号个数超过 max_children
    """
    lam = as_signature(lam)
    n = len(lam)
    if n == 1:
        return DiscreteMeasure.point_mass(lam[0])
    limit = get_limit("max_children")
    children = count_children(lam)
    if children > limit:
        raise DeskScaleError(f"λ 有 {children} 个子标号，超过上限 {limit}")
    th = float(theta)
    lam_arr = np.asarray(lam, dtype=float)
    nu = lam_arr[1:].copy()
    log_parent = log_principal_special(lam_arr, th)
    log_nu = log_principal_special(nu, th)
    free = [i for i in range(n - 1) if lam[i] > lam[i + 1]]
    total = sum(lam)
    masses: Dict[int, float] = {}
    for choice in itertools.product(*[range(lam[i + 1], lam[i] + 1) for i in free]):
        mu = nu.copy()
        active = []
        for i, value in zip(free, choice):
            if value != lam[i + 1]:
                mu[i] = value
                active.append(i)
        active = np.asarray(active, dtype=int)
        log_weight = log_nu - log_parent
        if len(active):
            log_weight += _log_psi(lam_arr, mu, active, th)
            log_weight += _touching_pairs_log(mu, active, th) - _touching_pairs_log(nu, active, th)
        xi = total - int(round(mu.sum()))
        masses[xi] = masses.get(xi, 0.0) + float(np.exp(log_weight))
    mass = sum(masses.values())
    logger.debug("浮点一点测度: n=%d, %d 个子标号, 总质量 %.15f", n, children, mass)
    if abs(mass - 1) > get_tolerance("complex_compare"):
        logger.warning("浮点一点测度的总质量偏离 1: %.3e（λ 长度 %d）", mass - 1, n)
    return DiscreteMeasure({xi: m / mass for xi, m in masses.items()})


# ---------------------------------------------------------------------------
# 校验
# ---------------------------------------------------------------------------

def stochasticity_check(lam: Sequence[int], theta, engine: JackEngine = None) -> dict:
    """Σ_μ ω(μ, λ) = 1 且 0 ≤ ω ≤ 1"""
    row = link_weights(lam, theta, engine)
    if not row.is_stochastic():
        return error_response("链接不是随机矩阵的行",
                              counterexample={"lambda": list(row.parent), "total": str(row.total())})
    return success_response(f"链接行随机: λ = {format_parts(row.parent)}", children=len(row.children))


def one_point_consistency_check(lam: Sequence[int], theta, engine: JackEngine = None) -> dict:
    """单步链接得到的 M_n 与 Φ_λ(z,1,…,1) 的 Laurent 系数一致"""
    lam = as_signature(lam)
    engine = engine or JackEngine(theta)
    left = one_point_measure(lam, theta, engine)
    right = measure_from_phi(lam, theta, engine)
    if left.masses != right.masses:
        return error_response("链接一点测度与 Laurent 系数不一致",
                              counterexample={"lambda": list(lam), "links": left.to_dict(), "phi": right.to_dict()})
    return success_response(f"一点测度一致: λ = {format_parts(lam)}")


def projection_check(lam: Sequence[int], k: int, theta, engine: JackEngine = None) -> dict:
    """
    Σ_ν Proj(ν) P_ν(z)/P_ν(1^k) 与 Φ_λ(z_1..z_k, 1..1) 的 Laurent 展开逐项相等，总质量为 1
    """
    lam = as_signature(lam)
    engine = engine or JackEngine(theta)
    projection = project_delta(lam, k, theta, engine)
    if sum(projection.values(), Fraction(0)) != 1:
        return error_response("投影不守恒质量", counterexample={"lambda": list(lam), "k": k})
    combined: Dict[Tuple[int, ...], Fraction] = {}
    for nu, w in projection.items():
        scale = w / engine.principal_special(nu)
        for exps, coef in engine.jack_P(nu).expand().items():
            combined[exps] = combined.get(exps, Fraction(0)) + scale * coef
    principal = engine.principal_special(lam)
    target = {e: c / principal for e, c in engine.jack_P(lam).partial_laurent(k).items()}
    combined = {e: c for e, c in combined.items() if c}
    if combined != target:
        diff = sorted(set(combined) ^ set(target) or {e for e in target if combined.get(e) != target[e]})
        return error_response("投影与 Φ_λ 的展开不一致",
                              counterexample={"lambda": list(lam), "k": k, "monomial": list(diff[0])})
    return success_response(f"投影与展开一致: λ = {format_parts(lam)}, k = {k}", states=len(projection))
