#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
移位 Jack 多项式 P*_μ
移位分支规则、插值（消失条件）预言机、移位 Schur 行列式公式、g*_k 的精确求值
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Sequence, Tuple

import sympy
from sympy import QQ, Poly

from jackkit.engine_config import get_limit
from jackkit.errors import DeskScaleError, JackkitError, ParseError, SingularSystemError
from jackkit.jack_engine import JackEngine
from jackkit.partitions import (
    as_partition,
    as_theta,
    format_parts,
    format_rational,
    hook_H,
    hook_Hprime,
    interlacing_children,
    pad,
    parse_rational,
    partitions_up_to,
    pochhammer,
)
from jackkit.symfun import SymFun, from_sympy_rational, to_sympy_rational

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def variables(n: int) -> Tuple[sympy.Symbol, ...]:
    """x1, …, xn"""
    if n == 0:
        return ()
    return tuple(sympy.symbols(f"x1:{n + 1}"))


def _zero_poly(n: int) -> Poly:
    gens = variables(n)
    return Poly(0, *gens, domain=QQ) if gens else Poly(0, sympy.Symbol("x0"), domain=QQ)


class ShiftedPoly:
    """
    n 元有理系数多项式，带 θ 标记；属于 Λ^θ(n) 时关于 x_i − θi 对称
    """

    def __init__(self, n: int, theta, poly: Poly):
        self.n = n
        self.theta = Fraction(theta)
        self.poly = poly

    @property
    def gens(self) -> Tuple[sympy.Symbol, ...]:
        return variables(self.n)

    def degree(self) -> int:
        return self.poly.total_degree()

    def __call__(self, point: Sequence) -> Fraction:
        """在有理点（分拆或标号）处精确求值"""
        if len(point) != self.n:
            point = pad(point, self.n)
        return from_sympy_rational(self.poly(*[to_sympy_rational(v) for v in point]))

    evaluate = __call__

    def scale(self, factor) -> "ShiftedPoly":
        return ShiftedPoly(self.n, self.theta, self.poly.mul_ground(to_sympy_rational(factor)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ShiftedPoly):
            return NotImplemented
        return self.n == other.n and self.theta == other.theta and (self.poly - other.poly).is_zero

    def __hash__(self):
        return hash((self.n, self.theta, tuple(self.poly.terms())))

    def __repr__(self) -> str:
        return f"ShiftedPoly(n={self.n}, θ={self.theta}, {self.poly.as_expr()})"

    def top_term(self) -> SymFun:
        """最高次齐次部分，作为单项式对称基下的 SymFun"""
        deg = self.degree()
        terms = {}
        for monom, coef in self.poly.terms():
            if sum(monom) != deg:
                continue
            if all(monom[i] >= monom[i + 1] for i in range(len(monom) - 1)):
                terms[monom] = from_sympy_rational(coef)
        return SymFun(self.n, terms)

    def is_shifted_symmetric(self) -> bool:
        """对每个相邻对做 x_i ↦ x_{i+1} − θ, x_{i+1} ↦ x_i + θ，多项式不变"""
        gens = self.gens
        theta = to_sympy_rational(self.theta)
        expr = self.poly.as_expr()
        for i in range(self.n - 1):
            swapped = expr.xreplace({gens[i]: gens[i + 1] - theta, gens[i + 1]: gens[i] + theta})
            if not (Poly(swapped, *gens, domain=QQ) - self.poly).is_zero:
                return False
        return True

    def restrict_last_zero(self) -> "ShiftedPoly":
        """x_n = 0，得到 n − 1 元多项式"""
        if self.n < 2:
            raise JackkitError("至少需要两个变量")
        reduced = self.poly.as_expr().xreplace({self.gens[-1]: 0})
        return ShiftedPoly(self.n - 1, self.theta, Poly(reduced, *variables(self.n - 1), domain=QQ))

    def to_json(self) -> Dict[str, Any]:
        terms = sorted(self.poly.terms(), reverse=True)
        return {
            "n": self.n,
            "theta": format_rational(self.theta),
            "terms": [{"exp": list(m), "coef": format_rational(from_sympy_rational(c))} for m, c in terms],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ShiftedPoly":
        try:
            n = int(data["n"])
            rep = {tuple(int(e) for e in t["exp"]): to_sympy_rational(parse_rational(t["coef"])) for t in data["terms"]}
            poly = Poly.from_dict(rep, *variables(n), domain=QQ) if rep else _zero_poly(n)
            return cls(n, parse_rational(data["theta"]), poly)
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"ShiftedPoly JSON 格式错误: {e}") from None


class ShiftedJackEngine:
    """固定 θ 的移位 Jack 多项式计算器"""

    def __init__(self, theta, jack: JackEngine = None):
        self.theta = as_theta(theta)
        self.jack = jack if jack is not None else JackEngine(self.theta)
        self._theta_sym = to_sympy_rational(self.theta)
        self._polys: Dict[Tuple[Tuple[int, ...], int], Poly] = {}
        self._values: Dict[Tuple[Tuple[int, ...], Tuple[Fraction, ...]], Fraction] = {}

    # ------------------------------------------------------------------
    # 移位分支规则
    # ------------------------------------------------------------------

    @staticmethod
    def skew_cells(lam: Sequence[int], mu: Sequence[int]) -> List[Tuple[int, int]]:
        """λ/μ 的格子：第 i < m 行为 μ_i+1..λ_i 列，第 m 行为 1..λ_m 列"""
        m = len(lam)
        result = []
        for i in range(1, m + 1):
            start = mu[i - 1] + 1 if i < m else 1
            result.extend((i, j) for j in range(start, lam[i - 1] + 1))
        return result

    def _pstar_poly(self, lam: Tuple[int, ...], n: int) -> Poly:
        """P*_λ 作用在后 len(λ) 个变量上"""
        key = (lam, n)
        cached = self._polys.get(key)
        if cached is not None:
            return cached
        gens = variables(n)
        m = len(lam)
        if m == 0:
            result = Poly(1, *gens, domain=QQ)
        else:
            x = gens[n - m]
            result = _zero_poly(n)
            for mu in interlacing_children(lam):
                factor = Poly(1, *gens, domain=QQ)
                for i, j in self.skew_cells(lam, mu):
                    # x_1 − a′(s) + θ l′(s)
                    factor = factor * Poly(x - (j - 1) + self._theta_sym * (i - 1), *gens, domain=QQ)
                psi = to_sympy_rational(self.jack.psi(lam, mu))
                result = result + (factor * self._pstar_poly(mu, n)).mul_ground(psi)
        self._polys[key] = result
        return result

    def pstar(self, mu: Sequence[int], n: int) -> ShiftedPoly:
        """
        移位 Jack 多项式 P*_μ(x_1..x_n; θ)

        P*_λ(x_1, x_2, …) = Σ_{μ≺λ} ψ_{λ/μ} ∏_{s∈λ/μ}(x_1 − a′(s) + θl′(s)) P*_μ(x_2, …)

        Args:
            mu: 分拆，ℓ(μ) ≤ n
            n: 变量个数
        """
        mu = as_partition(mu)
        if len(mu) > n:
            raise JackkitError(f"ℓ(μ) = {len(mu)} 超过 n = {n}")
        return ShiftedPoly(n, self.theta, self._pstar_poly(pad(mu, n), n))

    def qstar(self, mu: Sequence[int], n: int) -> ShiftedPoly:
        """Q*_μ = P*_μ · H′(μ)/H(μ)"""
        mu = as_partition(mu)
        return self.pstar(mu, n).scale(hook_Hprime(mu, self.theta) / hook_H(mu, self.theta))

    def pstar_eval(self, mu: Sequence[int], point: Sequence) -> Fraction:
        """
        直接在点上做移位分支递推，不构造多项式

        Args:
            mu: 分拆
            point: 有理点（分拆或标号），长度 n ≥ ℓ(μ)
        """
        point = tuple(Fraction(x) for x in point)
        mu = as_partition(mu)
        if len(mu) > len(point):
            raise JackkitError(f"ℓ(μ) = {len(mu)} 超过 n = {len(point)}")
        return self._eval(pad(mu, len(point)), point)

    def qstar_eval(self, mu: Sequence[int], point: Sequence) -> Fraction:
        mu = as_partition(mu)
        return self.pstar_eval(mu, point) * hook_Hprime(mu, self.theta) / hook_H(mu, self.theta)

    def _eval(self, lam: Tuple[int, ...], point: Tuple[Fraction, ...]) -> Fraction:
        key = (lam, point)
        cached = self._values.get(key)
        if cached is not None:
            return cached
        if not lam:
            return Fraction(1)
        x = point[0]
        total = Fraction(0)
        for mu in interlacing_children(lam):
            factor = Fraction(1)
            for i, j in self.skew_cells(lam, mu):
                factor *= x - (j - 1) + self.theta * (i - 1)
                if not factor:
                    break
            if factor:
                total += self.jack.psi(lam, mu) * factor * self._eval(mu, point[1:])
        self._values[key] = total
        return total

    # ------------------------------------------------------------------
    # 插值预言机
    # ------------------------------------------------------------------

    def shifted_power_sum(self, m: int, n: int) -> Poly:
        """p*_m = Σ((x_i − θi)^m − (−θi)^m)"""
        gens = variables(n)
        theta = self._theta_sym
        expr = sum(((g - theta * i) ** m - (-theta * i) ** m for i, g in enumerate(gens, start=1)), sympy.Integer(0))
        return Poly(expr, *gens, domain=QQ)

    def shifted_power_sum_value(self, m: int, point: Sequence) -> Fraction:
        return sum(((Fraction(x) - self.theta * i) ** m - (-self.theta * i) ** m
                    for i, x in enumerate(point, start=1)), Fraction(0))

    def interpolation_oracle(self, mu: Sequence[int], n: int) -> ShiftedPoly:
        """
        由插值条件解出 P*_μ

        基：分量不超过 n、|ρ| ≤ |μ| 的 p*_ρ 乘积；约束：在全部 |λ| ≤ |μ|、ℓ(λ) ≤ n、λ ≠ μ 处为 0，
        在 μ 处等于 H(μ)。

        Raises:
            SingularSystemError: 方程组不是方阵或奇异
            DeskScaleError: |μ| 超过 max_oracle_weight
        """
        mu = as_partition(mu)
        d = sum(mu)
        limit = get_limit("max_oracle_weight")
        if d > limit:
            raise DeskScaleError(f"插值预言机只支持 |μ| ≤ {limit}")
        if len(mu) > n:
            raise JackkitError(f"ℓ(μ) = {len(mu)} 超过 n = {n}")
        points = [pad(lam, n) for lam in partitions_up_to(d, max_parts=n)]
        basis = [rho for rho in partitions_up_to(d) if not rho or rho[0] <= n]
        if len(points) != len(basis):
            raise SingularSystemError(f"约束数 {len(points)} 与基维数 {len(basis)} 不等")
        size = len(basis)
        matrix = sympy.zeros(size, size)
        for r, point in enumerate(points):
            sums = {m: self.shifted_power_sum_value(m, point) for m in range(1, n + 1)}
            for c, rho in enumerate(basis):
                value = Fraction(1)
                for part in rho:
                    value *= sums[part]
                matrix[r, c] = to_sympy_rational(value)
        rhs = sympy.zeros(size, 1)
        rhs[points.index(pad(mu, n))] = to_sympy_rational(hook_H(mu, self.theta))
        if matrix.rank() < size:
            raise SingularSystemError(f"插值方程组奇异: μ = {format_parts(mu)}, n = {n}")
        solution = matrix.LUsolve(rhs)
        power_sums = {m: self.shifted_power_sum(m, n) for m in range(1, n + 1)}
        result = _zero_poly(n)
        for c, rho in enumerate(basis):
            if solution[c] == 0:
                continue
            term = Poly(1, *variables(n), domain=QQ)
            for part in rho:
                term = term * power_sums[part]
            result = result + term.mul_ground(solution[c])
        logger.debug("插值预言机: μ=%s, n=%d, 维数=%d", format_parts(mu), n, size)
        return ShiftedPoly(n, self.theta, result)

    def shifted_schur(self, mu: Sequence[int], n: int) -> ShiftedPoly:
        """
        θ = 1 时的移位 Schur 函数

        s*_μ = det[(x_i + n − i)↓(μ_j + n − j)] / ∏_{i<j}(x_i − x_j + j − i)
        """
        if self.theta != 1:
            raise JackkitError("行列式公式只在 θ = 1 时成立")
        mu = pad(as_partition(mu), n)
        gens = variables(n)
        matrix = sympy.Matrix(n, n, lambda i, j: sympy.ff(gens[i] + n - 1 - i, mu[j] + n - 1 - j))
        numer = Poly(matrix.det(method="berkowitz"), *gens, domain=QQ)
        denom = Poly(sympy.Mul(*[gens[i] - gens[j] + j - i for i in range(n) for j in range(i + 1, n)]),
                     *gens, domain=QQ)
        quotient, remainder = numer.div(denom)
        if not remainder.is_zero:
            raise JackkitError("行列式不能被 Vandermonde 型分母整除")
        return ShiftedPoly(n, self.theta, quotient)

    # ------------------------------------------------------------------
    # g*_k
    # ------------------------------------------------------------------

    def gstar_k(self, k: int, point: Sequence) -> Fraction:
        """g*_k = Q*_{(k)} 在点上的精确值"""
        return gstar_value(k, point, self.theta)

    def gstar_poly(self, k: int, n: int) -> ShiftedPoly:
        """g*_k 作为 n 元多项式"""
        gens = variables(n)
        theta = self._theta_sym
        dp = [Poly(1, *gens, domain=QQ)] + [_zero_poly(n)] * k
        for x in gens:
            new = [_zero_poly(n)] * (k + 1)
            for s in range(k + 1):
                if dp[s].is_zero:
                    continue
                term = dp[s]
                weight = sympy.Integer(1)
                new[s] = new[s] + term
                for mult in range(1, k - s + 1):
                    weight = weight * (theta + mult - 1) / mult
                    term = term * Poly(x - (k - (s + mult)), *gens, domain=QQ)
                    new[s + mult] = new[s + mult] + term.mul_ground(weight)
            dp = new
        return ShiftedPoly(n, self.theta, dp[k])


def gstar_value(k: int, point: Sequence, theta) -> Fraction:
    """
    g*_k(x; θ) = Σ_{i_1≤…≤i_k} ∏(θ)_{m}/m! · (x_{i_1} − k + 1)(x_{i_2} − k + 2)⋯x_{i_k}

    对指数位置做动态规划：第 t 个位置的平移量为 k − t，复杂度 O(n k²)。
    """
    theta = Fraction(theta)
    weights = [pochhammer(theta, m) / Fraction(math.factorial(m)) for m in range(k + 1)]
    dp = [Fraction(0)] * (k + 1)
    dp[0] = Fraction(1)
    for x in point:
        x = Fraction(x)
        new = list(dp)
        for s in range(k):
            if not dp[s]:
                continue
            prod = Fraction(1)
            for mult in range(1, k - s + 1):
                prod *= x - (k - (s + mult))
                new[s + mult] += dp[s] * weights[mult] * prod
        dp = new
    return dp[k]
