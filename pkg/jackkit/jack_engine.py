#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Jack 多项式引擎
P_λ(x_1..x_n; θ) 的分支规则递推、Gram–Schmidt 预言机、分支系数 ψ_{λ/μ}、
主特化 P_λ(1ⁿ)、归一化函数 Φ_λ 的数值求值、g_k 与 Cauchy 恒等式
"""

import logging
import math
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np
import sympy
from scipy.special import gammaln

from jackkit.engine_config import get_engine_config, get_limit, get_tolerance
from jackkit.errors import (
    DeskScaleError,
    InconsistencyError,
    InterlacingError,
    TorusPointError,
    error_response,
    success_response,
)
from jackkit.partitions import (
    as_partition,
    as_signature,
    as_theta,
    format_parts,
    hook_H,
    hook_Hprime,
    interlaces,
    interlacing_children,
    pad,
    partitions_of,
    pochhammer,
    shifted_factorial,
)
from jackkit.symfun import (
    SymFun,
    from_sympy_rational,
    power_sum_basis,
)

logger = logging.getLogger(__name__)


class JackEngine:
    """
    固定 θ 的 Jack 多项式计算器

    每个实例持有自己的记忆化缓存；返回的 SymFun 不会再被修改，可以自由共享。
    """

    def __init__(self, theta):
        """
        Args:
            theta: 正有理数 θ（int、Fraction 或 "p/q"）
        """
        self.theta = as_theta(theta)
        self._monomials: Dict[Tuple[int, ...], Dict[Tuple[int, ...], Fraction]] = {}
        self._chain_sums: Dict[Tuple[int, ...], Fraction] = {}
        self._gram_schmidt: Dict[int, Dict[Tuple[int, ...], Dict[Tuple[int, ...], Fraction]]] = {}

    # ------------------------------------------------------------------
    # 分支系数
    # ------------------------------------------------------------------

    def psi(self, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
        """
        分支系数 ψ_{λ/μ}

        ∏_{1≤i≤j<n} (μ_i−μ_j+θ(j−i)+θ)_m / (μ_i−μ_j+θ(j−i)+1)_m
                  · (λ_i−μ_j+θ(j−i)+1)_m / (λ_i−μ_j+θ(j−i)+θ)_m，  m = μ_j − λ_{j+1}

        Raises:
            InterlacingError: μ 与 λ 不交错
        """
        lam = tuple(lam)
        mu = tuple(mu)
        if not interlaces(lam, mu):
            raise InterlacingError(f"{format_parts(mu)} 与 {format_parts(lam)} 不交错")
        theta = self.theta
        n = len(lam)
        value = Fraction(1)
        for j in range(1, n):
            m = mu[j - 1] - lam[j]
            if m == 0:
                continue
            for i in range(1, j + 1):
                base_mu = mu[i - 1] - mu[j - 1] + theta * (j - i)
                base_lam = lam[i - 1] - mu[j - 1] + theta * (j - i)
                value *= pochhammer(base_mu + theta, m) / pochhammer(base_mu + 1, m)
                value *= pochhammer(base_lam + 1, m) / pochhammer(base_lam + theta, m)
        return value

    def branching_row(self, lam: Sequence[int]) -> List[Tuple[Tuple[int, ...], Fraction]]:
        """λ 的全部 (μ, ψ_{λ/μ})"""
        lam = as_signature(lam)
        return [(mu, self.psi(lam, mu)) for mu in interlacing_children(lam)]

    # ------------------------------------------------------------------
    # 分支规则递推
    # ------------------------------------------------------------------

    def _partition_monomials(self, lam: Tuple[int, ...]) -> Dict[Tuple[int, ...], Fraction]:
        """
        长度为 n 的分拆（含零）的单项式系数

        c(λ, κ) = Σ_{μ≺λ, |λ|−|μ|=κ_1} ψ_{λ/μ} c(μ, (κ_2, …))
        """
        cached = self._monomials.get(lam)
        if cached is not None:
            return cached
        if len(lam) == 1:
            result = {lam: Fraction(1)}
        else:
            total = sum(lam)
            result: Dict[Tuple[int, ...], Fraction] = {}
            for mu in interlacing_children(lam):
                d = total - sum(mu)
                child = self._partition_monomials(mu)
                psi = None
                for key, coef in child.items():
                    if key[0] > d:
                        continue
                    if psi is None:
                        psi = self.psi(lam, mu)
                    kappa = (d,) + key
                    result[kappa] = result.get(kappa, Fraction(0)) + psi * coef
            result = {k: v for k, v in result.items() if v}
        self._monomials[lam] = result
        return result

    def jack_P(self, lam: Sequence[int]) -> SymFun:
        """
        Jack 多项式 P_λ(x_1..x_n; θ)

        负分量通过 P_{λ+c·1ⁿ} = (∏x_i)^c P_λ 处理。

        Args:
            lam: 长度为 n 的标号

        Returns:
            SymFun: n 元（Laurent）对称多项式
        """
        lam = as_signature(lam)
        c = max(0, -lam[-1])
        shifted = tuple(p + c for p in lam)
        result = SymFun(len(lam), self._partition_monomials(shifted))
        return result.shift(-c) if c else result

    def jack_Q(self, lam: Sequence[int]) -> SymFun:
        """Q_λ = P_λ · H′(λ)/H(λ)，λ 为分拆（含补零）"""
        lam = tuple(lam)
        part = as_partition(lam)
        return self.jack_P(lam).scale(hook_Hprime(part, self.theta) / hook_H(part, self.theta))

    # ------------------------------------------------------------------
    # Gram–Schmidt 预言机
    # ------------------------------------------------------------------

    def _orthogonalize(self, degree: int) -> Dict[Tuple[int, ...], Dict[Tuple[int, ...], Fraction]]:
        cached = self._gram_schmidt.get(degree)
        if cached is not None:
            return cached
        basis = power_sum_basis(degree, self.theta)
        size = len(basis.partitions)
        vectors: List[sympy.Matrix] = []
        norms: List[sympy.Rational] = []
        # 字典序递增地处理：每个 m_κ 减去在它之前的全部分量
        for idx in range(size):
            vec = sympy.zeros(size, 1)
            vec[idx] = 1
            for prev, norm in zip(vectors, norms):
                vec = vec - ((vec.T * basis.gram * prev)[0, 0] / norm) * prev
            vectors.append(vec)
            norms.append((vec.T * basis.gram * vec)[0, 0])
        result = {}
        for idx, kappa in enumerate(basis.partitions):
            vec = vectors[idx]
            result[kappa] = {basis.partitions[r]: from_sympy_rational(vec[r]) for r in range(size) if vec[r] != 0}
        logger.debug("Gram–Schmidt 完成: 次数 %d, 维数 %d", degree, size)
        self._gram_schmidt[degree] = result
        return result

    def gram_schmidt_oracle(self, lam: Sequence[int], n: int) -> SymFun:
        """
        以单项式基 Gram–Schmidt 正交化得到的 P_λ，与分支规则无关

        Args:
            lam: 分拆
            n: 变量个数，n ≥ ℓ(λ)

        Raises:
            DeskScaleError: |λ| 超过 max_oracle_weight
        """
        lam = as_partition(lam)
        if len(lam) > n:
            raise DeskScaleError(f"ℓ(λ) = {len(lam)} 超过 n = {n}")
        limit = get_limit("max_oracle_weight")
        if sum(lam) > limit:
            raise DeskScaleError(f"Gram–Schmidt 预言机只支持 |λ| ≤ {limit}")
        coefs = self._orthogonalize(sum(lam))[lam]
        return SymFun(n, {pad(k, n): v for k, v in coefs.items() if len(k) <= n})

    # ------------------------------------------------------------------
    # 主特化
    # ------------------------------------------------------------------

    def principal_special_chain_sum(self, lam: Sequence[int]) -> Fraction:
        """P_λ(1ⁿ) 作为 Gelfand–Tsetlin 链上 ψ 乘积之和"""
        lam = tuple(lam)
        cached = self._chain_sums.get(lam)
        if cached is not None:
            return cached
        if len(lam) == 1:
            value = Fraction(1)
        else:
            value = sum((self.psi(lam, mu) * self.principal_special_chain_sum(mu)
                         for mu in interlacing_children(lam)), Fraction(0))
        self._chain_sums[lam] = value
        return value

    def principal_special(self, lam: Sequence[int], validate: bool = None) -> Fraction:
        """
        主特化 P_λ(1, …, 1; θ)

        闭式为 (nθ)_λ / H′(λ)（作用在平移后的分拆上）；等价地 Q_λ(1ⁿ) = (nθ)_λ / H(λ)。
        在桌面规模内且配置要求时，用链求和校验闭式。

        Raises:
            InconsistencyError: 闭式与链求和不一致
        """
        lam = as_signature(lam)
        n = len(lam)
        c = max(0, -lam[-1])
        part = as_partition(tuple(p + c for p in lam))
        value = shifted_factorial(n * self.theta, part, self.theta) / hook_Hprime(part, self.theta)
        if validate is None:
            validate = get_engine_config().validate_closed_forms and self._within_desk(lam)
        if validate:
            oracle = self.principal_special_chain_sum(tuple(p + c for p in lam))
            if oracle != value:
                raise InconsistencyError(
                    f"主特化闭式 {value} 与链求和 {oracle} 不一致: λ = {format_parts(lam)}")
        return value

    @staticmethod
    def _within_desk(lam: Sequence[int]) -> bool:
        return len(lam) <= min(6, get_limit("max_variables")) and max(abs(p) for p in lam) <= 6

    # ------------------------------------------------------------------
    # 归一化函数
    # ------------------------------------------------------------------

    def phi_eval(self, lam: Sequence[int], z: Sequence[complex]) -> complex:
        """
        Φ_λ(z_1, …, z_k, 1, …, 1) 的双精度值

        Raises:
            TorusPointError: 某个 |z_i| 偏离 1 超过容差
        """
        lam = as_signature(lam)
        n = len(lam)
        z = list(z)
        if len(z) > n:
            raise TorusPointError(f"点数 {len(z)} 超过 n = {n}")
        tol = get_tolerance("torus")
        for point in z:
            if abs(abs(point) - 1) > tol:
                raise TorusPointError(f"点 {point} 不在单位圆上")
        full = z + [1.0] * (n - len(z))
        return self.jack_P(lam).evaluate_float(full) / float(self.principal_special(lam))

    # ------------------------------------------------------------------
    # g_k 与 Cauchy 恒等式
    # ------------------------------------------------------------------

    def g_k(self, k: int, n: int) -> SymFun:
        """g_k = Q_{(k)}，n 个变量"""
        if k == 0:
            return SymFun.one(n)
        return self.jack_Q(pad((k,), n))

    def g_k_explicit(self, k: int, n: int) -> SymFun:
        """g_k = Σ_κ ∏(θ)_{κ_i}/κ_i! · m_κ"""
        terms = {}
        for kappa in partitions_of(k, max_parts=n):
            coef = Fraction(1)
            for part in kappa:
                coef *= pochhammer(self.theta, part) / math.factorial(part)
            terms[pad(kappa, n)] = coef
        return SymFun(n, terms)

    def cauchy_check(self, n: int, m: int, degree: int) -> dict:
        """
        校验 ∏_{i,j}(1 − x_i y_j)^{−θ} = Σ_λ P_λ(x) Q_λ(y) 到总次数 degree（x、y 各自的次数）

        左边 x^κ y^ν 的系数为满足行和 κ、列和 ν 的非负整数矩阵 K 上 ∏(θ)_{K_ij}/K_ij! 之和。

        Returns:
            Dict: 结果字典，失败时 counterexample 为第一个不一致的单项式
        """
        checked = 0
        for d in range(degree + 1):
            rhs: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction] = {}
            for lam in partitions_of(d, max_parts=min(n, m)):
                px = self.jack_P(pad(lam, n))
                qy = self.jack_Q(pad(lam, m))
                for kx, cx in px.terms.items():
                    for ky, cy in qy.terms.items():
                        rhs[(kx, ky)] = rhs.get((kx, ky), Fraction(0)) + cx * cy
            for kappa in partitions_of(d, max_parts=n):
                for nu in partitions_of(d, max_parts=m):
                    kx, ky = pad(kappa, n), pad(nu, m)
                    lhs = self._cauchy_lhs(kx, ky)
                    right = rhs.get((kx, ky), Fraction(0))
                    checked += 1
                    if lhs != right:
                        return error_response(
                            "Cauchy 恒等式不成立",
                            counterexample={"x": list(kx), "y": list(ky), "lhs": str(lhs), "rhs": str(right)},
                            checked=checked)
        return success_response(f"Cauchy 恒等式在 {checked} 个单项式上成立", checked=checked)

    def _cauchy_lhs(self, rows: Tuple[int, ...], cols: Tuple[int, ...]) -> Fraction:
        weights = [pochhammer(self.theta, k) / math.factorial(k) for k in range(sum(rows) + 1)]

        def fill(i: int, remaining_cols: Tuple[int, ...]) -> Fraction:
            if i == len(rows):
                return Fraction(1) if not any(remaining_cols) else Fraction(0)
            total = Fraction(0)
            for row_entries in _compositions_bounded(rows[i], remaining_cols):
                w = Fraction(1)
                for e in row_entries:
                    w *= weights[e]
                left = tuple(c - e for c, e in zip(remaining_cols, row_entries))
                total += w * fill(i + 1, left)
            return total

        return fill(0, cols)


def _compositions_bounded(total: int, caps: Sequence[int]):
    """和为 total、第 j 个分量不超过 caps[j] 的全部非负整数向量"""
    if not caps:
        if total == 0:
            yield ()
        return
    for first in range(min(total, caps[0]), -1, -1):
        for rest in _compositions_bounded(total - first, caps[1:]):
            yield (first,) + rest


def log_principal_special(parts: Sequence[int], theta: float) -> float:
    """
    log P_λ(1ⁿ)，双精度，适用于很大的 n

    P_λ(1ⁿ) = ∏_{i<j} (θ(j−i+1))_{λ_i−λ_j} / (θ(j−i))_{λ_i−λ_j}
    """
    lam = np.asarray(parts, dtype=float)
    n = len(lam)
    if n < 2:
        return 0.0
    i, j = np.triu_indices(n, k=1)
    return float(np.sum(pair_log_factor(lam[i] - lam[j], (j - i).astype(float), theta)))


def pair_log_factor(diff: np.ndarray, gap: np.ndarray, theta: float) -> np.ndarray:
    """log[(θ(r+1))_d / (θr)_d]，d = λ_i − λ_j，r = j − i"""
    return (gammaln(diff + theta * (gap + 1)) - gammaln(diff + theta * gap)
            + gammaln(theta * gap) - gammaln(theta * (gap + 1)))
