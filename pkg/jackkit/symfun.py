#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
单项式对称基下的（Laurent）对称多项式 SymFun
以及幂和基 p_ρ 的转换矩阵、θ-内积 (p_λ, p_μ) = δ z_λ θ^{−ℓ(λ)}

SymFun 的键是长度恰为 n 的弱递减整数向量（单项式对称函数 m_κ 的指标），
系数为 Fraction，零系数不存储。序列化时按逆字典序排列。
"""

import logging
import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

import numpy as np
import sympy
from sympy.utilities.iterables import multiset_permutations

from jackkit.errors import InvalidPartitionError, ParseError, JackkitError
from jackkit.partitions import (
    as_partition,
    format_rational,
    pad,
    parse_rational,
    partitions_of,
    z_lambda,
)

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]


class SymFun:
    """n 个变量的对称（Laurent）多项式，单项式对称基"""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Sequence[int], Any] = None):
        """
        Args:
            n: 变量个数
            terms: {指数向量: 系数}，向量长度不足 n 时补零
        """
        if n < 0:
            raise JackkitError("变量个数不能为负")
        self.n = n
        clean: Dict[Key, Fraction] = {}
        for exp, coef in (terms or {}).items():
            key = pad(tuple(exp), n) if all(e >= 0 for e in exp) else tuple(exp)
            if len(key) != n:
                raise InvalidPartitionError(f"指数 {list(exp)} 的长度不是 {n}")
            if any(key[i] < key[i + 1] for i in range(n - 1)):
                raise InvalidPartitionError(f"指数 {list(exp)} 不是弱递减的")
            coef = Fraction(coef)
            if coef:
                clean[key] = clean.get(key, Fraction(0)) + coef
                if not clean[key]:
                    del clean[key]
        self.terms = clean

    # ---- 构造 ----

    @classmethod
    def zero(cls, n: int) -> "SymFun":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "SymFun":
        return cls(n, {(0,) * n: 1})

    @classmethod
    def monomial(cls, n: int, exp: Sequence[int], coef=1) -> "SymFun":
        return cls(n, {tuple(exp): coef})

    # ---- 算术 ----

    def _same_n(self, other: "SymFun") -> None:
        if other.n != self.n:
            raise JackkitError(f"变量个数不一致: {self.n} 与 {other.n}")

    def __add__(self, other: "SymFun") -> "SymFun":
        self._same_n(other)
        terms = dict(self.terms)
        for key, coef in other.terms.items():
            terms[key] = terms.get(key, 0) + coef
        return SymFun(self.n, terms)

    def __neg__(self) -> "SymFun":
        return SymFun(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "SymFun") -> "SymFun":
        return self + (-other)

    def scale(self, factor) -> "SymFun":
        factor = Fraction(factor)
        return SymFun(self.n, {k: c * factor for k, c in self.terms.items()})

    def shift(self, c: int) -> "SymFun":
        """乘以 (x_1⋯x_n)^c"""
        return SymFun(self.n, {tuple(e + c for e in k): v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFun):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"SymFun(n={self.n}, {self.pretty()})"

    # ---- 访问 ----

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        key = tuple(exp)
        if all(e >= 0 for e in key):
            key = pad(key, self.n)
        return self.terms.get(key, Fraction(0))

    def keys(self) -> List[Key]:
        """逆字典序"""
        return sorted(self.terms, reverse=True)

    def degrees(self) -> List[int]:
        return sorted({sum(k) for k in self.terms})

    def homogeneous_part(self, degree: int) -> "SymFun":
        return SymFun(self.n, {k: c for k, c in self.terms.items() if sum(k) == degree})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_polynomial(self) -> bool:
        return all(k[-1] >= 0 for k in self.terms) if self.n else True

    # ---- 展开与求值 ----

    def expand(self) -> Dict[Key, Fraction]:
        """展开为普通单项式 {x 的指数: 系数}"""
        full: Dict[Key, Fraction] = {}
        for key, coef in self.terms.items():
            for perm in multiset_permutations(list(key)):
                full[tuple(perm)] = coef
        return full

    def evaluate(self, point: Sequence) -> Fraction:
        """精确求值，point 为有理数（Laurent 情形要求非零）"""
        if len(point) != self.n:
            raise JackkitError(f"求值点长度 {len(point)} 与 n = {self.n} 不符")
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for key, coef in self.terms.items():
            orbit = Fraction(0)
            for perm in multiset_permutations(list(key)):
                orbit += math.prod((x ** e for x, e in zip(point, perm)), start=Fraction(1))
            total += coef * orbit
        return total

    def evaluate_float(self, point: Sequence[complex]) -> complex:
        """
        双精度求值

        每个单项式轨道用 numpy 一次算出全部排列的乘积。
        """
        if len(point) != self.n:
            raise JackkitError(f"求值点长度 {len(point)} 与 n = {self.n} 不符")
        z = np.asarray(point, dtype=complex)
        total = 0j
        for key in self.keys():
            perms = np.array(list(multiset_permutations(list(key))), dtype=int)
            total += float(self.terms[key]) * np.prod(z[np.newaxis, :] ** perms, axis=1).sum()
        return complex(total)

    def partial_laurent(self, k: int) -> Dict[Key, Fraction]:
        """
        把后 n − k 个变量置为 1，返回前 k 个变量的 Laurent 单项式展开

        Returns:
            Dict: {(e_1, …, e_k): 系数}
        """
        if not 0 <= k <= self.n:
            raise JackkitError(f"k = {k} 不在 [0, {self.n}] 内")
        result: Dict[Key, Fraction] = {}
        for key, coef in self.terms.items():
            counts = Counter(key)
            for head in multiset_permutations(list(key), k):
                rest = counts - Counter(head)
                arrangements = math.factorial(self.n - k)
                for mult in rest.values():
                    arrangements //= math.factorial(mult)
                head = tuple(head)
                result[head] = result.get(head, Fraction(0)) + coef * arrangements
        return {e: c for e, c in result.items() if c}

    def to_sympy(self, symbols: Sequence[sympy.Symbol]) -> sympy.Expr:
        if len(symbols) != self.n:
            raise JackkitError("符号个数与 n 不符")
        expr = sympy.Integer(0)
        for exp, coef in self.expand().items():
            expr += to_sympy_rational(coef) * sympy.Mul(*[s ** e for s, e in zip(symbols, exp)])
        return expr

    # ---- 序列化 ----

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in self.keys():
            label = "m" + "".join(str(e) if 0 <= e <= 9 else f"({e})" for e in key)
            parts.append(f"{format_rational(self.terms[key])}·{label}")
        return " + ".join(parts)

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "terms": [{"exp": list(k), "coef": format_rational(self.terms[k])} for k in self.keys()],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "SymFun":
        try:
            n = int(data["n"])
            return cls(n, {tuple(int(e) for e in t["exp"]): parse_rational(t["coef"]) for t in data["terms"]})
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"SymFun JSON 格式错误: {e}") from None


def to_sympy_rational(value) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def from_sympy_rational(value) -> Fraction:
    value = sympy.nsimplify(value) if not isinstance(value, sympy.Rational) else value
    return Fraction(int(value.p), int(value.q))


# ---------------------------------------------------------------------------
# 幂和基
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def power_to_monomial(rho: Tuple[int, ...], kappa: Tuple[int, ...]) -> int:
    """
    p_ρ 在 m_κ 上的系数

    即把 ρ 的各分量分配到 κ 的各位置、使每个位置之和等于 κ_j 的方式数。
    """
    rho = as_partition(rho)
    kappa = as_partition(kappa)
    if sum(rho) != sum(kappa):
        return 0

    @lru_cache(maxsize=None)
    def count(index: int, remaining: Tuple[int, ...]) -> int:
        if index == len(rho):
            return 1 if not any(remaining) else 0
        total = 0
        part = rho[index]
        for j, slot in enumerate(remaining):
            if slot >= part:
                total += count(index + 1, remaining[:j] + (slot - part,) + remaining[j + 1:])
        return total

    return count(0, kappa)


class PowerSumBasis:
    """
    Λ 的 d 次齐次分量：幂和基与单项式基之间的转换，以及单项式基下的 Gram 矩阵
    """

    def __init__(self, degree: int, theta: Fraction):
        self.degree = degree
        self.theta = Fraction(theta)
        # 字典序递增，是支配序的线性扩张
        self.partitions: List[Tuple[int, ...]] = list(reversed(partitions_of(degree)))
        self.index = {p: i for i, p in enumerate(self.partitions)}
        size = len(self.partitions)
        self.transition = sympy.Matrix(size, size, lambda r, c: power_to_monomial(self.partitions[r], self.partitions[c]))
        self.inverse = self.transition.inv()
        theta_sym = to_sympy_rational(self.theta)
        diag = sympy.diag(*[sympy.Integer(z_lambda(p)) * theta_sym ** (-len(p)) for p in self.partitions])
        self.gram = self.inverse * diag * self.inverse.T
        logger.debug("幂和基 d=%d, 维数=%d", degree, size)

    def vector(self, f: SymFun) -> sympy.Matrix:
        """f 的 d 次分量在单项式基下的坐标，要求 n ≥ d"""
        vec = sympy.zeros(len(self.partitions), 1)
        for key, coef in f.terms.items():
            if sum(key) != self.degree:
                continue
            vec[self.index[as_partition(key)]] = to_sympy_rational(coef)
        return vec

    def inner(self, f: SymFun, g: SymFun) -> Fraction:
        value = (self.vector(f).T * self.gram * self.vector(g))[0, 0]
        return from_sympy_rational(value)

    def power_sum_coordinates(self, f: SymFun) -> Dict[Tuple[int, ...], Fraction]:
        """f 的 d 次分量在 p_ρ 基下的坐标"""
        coords = (self.vector(f).T * self.inverse).T
        return {self.partitions[i]: from_sympy_rational(coords[i]) for i in range(len(self.partitions)) if coords[i] != 0}


@lru_cache(maxsize=None)
def power_sum_basis(degree: int, theta: Fraction) -> PowerSumBasis:
    return PowerSumBasis(degree, Fraction(theta))


def _require_stable(f: SymFun) -> None:
    if not f.is_polynomial():
        raise JackkitError("内积与幂和展开只对多项式定义")
    top = max(f.degrees(), default=0)
    if f.n < top:
        raise JackkitError(f"需要 n ≥ 次数（n = {f.n}, 次数 = {top}），否则 n 元限制不能唯一确定 Λ 中的元素")


def inner_product(f: SymFun, g: SymFun, theta) -> Fraction:
    """
    θ-内积 (f, g)，基于 (p_λ, p_μ) = δ_{λμ} z_λ θ^{−ℓ(λ)}

    Raises:
        JackkitError: n 小于次数时 f, g 不能视为 Λ 的元素
    """
    _require_stable(f)
    _require_stable(g)
    total = Fraction(0)
    for d in set(f.degrees()) & set(g.degrees()):
        total += power_sum_basis(d, Fraction(theta)).inner(f, g)
    return total


def to_power_sums(f: SymFun) -> Dict[Tuple[int, ...], Fraction]:
    """把 f 写成幂和 p_ρ 的线性组合"""
    _require_stable(f)
    result: Dict[Tuple[int, ...], Fraction] = {}
    for d in f.degrees():
        # 基转换与 θ 无关
        result.update(power_sum_basis(d, Fraction(1)).power_sum_coordinates(f))
    return result


def power_sum(rho: Sequence[int], n: int) -> SymFun:
    """p_ρ 在 n 个变量中的单项式展开"""
    rho = as_partition(rho)
    d = sum(rho)
    return SymFun(n, {pad(kappa, n): power_to_monomial(rho, kappa) for kappa in partitions_of(d, max_parts=n)})


def iter_monomials(n: int, degree: int) -> Iterator[Key]:
    for kappa in partitions_of(degree, max_parts=n):
        yield pad(kappa, n)
