#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
截断形式幂级数
系数 c_0..c_K 可以是 Fraction（精确）或 float/complex（数值），截断阶 K 在所有运算中保持不变。
变量标记：
    "t"  : 普通幂级数
    "1/u": 关于 s = 1/u 的幂级数
    "ff" : 下降阶乘基 Σ c_k / (u(u−1)⋯(u−k+1))
"""

from fractions import Fraction
from typing import Any, Dict, List, Sequence

from jackkit.errors import JackkitError, ParseError
from jackkit.partitions import format_rational, parse_rational

VARIABLES = ("t", "1/u", "ff")


class FormalSeries:
    """截断到 K 阶的一元形式幂级数"""

    def __init__(self, coefs: Sequence, K: int = None, var: str = "t"):
        """
        Args:
            coefs: 系数 c_0, c_1, …
            K: 截断阶，默认 len(coefs) − 1
            var: 变量标记
        """
        if var not in VARIABLES:
            raise JackkitError(f"未知的级数变量: {var}")
        if K is None:
            K = len(coefs) - 1
        if K < 0:
            raise JackkitError("截断阶 K 必须 ≥ 0")
        coefs = list(coefs[:K + 1])
        coefs.extend([0] * (K + 1 - len(coefs)))
        self.coefs: List = [Fraction(c) if isinstance(c, int) else c for c in coefs]
        self.K = K
        self.var = var

    # ---- 构造 ----

    @classmethod
    def constant(cls, value, K: int, var: str = "t") -> "FormalSeries":
        return cls([value], K, var)

    @classmethod
    def monomial(cls, coef, power: int, K: int, var: str = "t") -> "FormalSeries":
        coefs = [0] * (K + 1)
        if power <= K:
            coefs[power] = coef
        return cls(coefs, K, var)

    @classmethod
    def binomial(cls, a, e, K: int, var: str = "t") -> "FormalSeries":
        """(1 + a·t)^e，e 可以是任意有理数"""
        coefs = [Fraction(1)]
        for k in range(1, K + 1):
            coefs.append(coefs[-1] * (e - (k - 1)) * a / k)
        return cls(coefs, K, var)

    @classmethod
    def linear_ratio(cls, a, b, K: int, var: str = "1/u") -> "FormalSeries":
        """(1 + a·s) / (1 + b·s)"""
        geometric = [Fraction(1)]
        for _ in range(K):
            geometric.append(geometric[-1] * (-b))
        coefs = [geometric[0]] + [geometric[k] + a * geometric[k - 1] for k in range(1, K + 1)]
        return cls(coefs, K, var)

    @classmethod
    def exponential(cls, a, K: int, var: str = "t") -> "FormalSeries":
        """e^{a·t}"""
        coefs = [Fraction(1)]
        for k in range(1, K + 1):
            coefs.append(coefs[-1] * a / k)
        return cls(coefs, K, var)

    # ---- 算术 ----

    def _check(self, other: "FormalSeries") -> None:
        if other.var != self.var:
            raise JackkitError(f"级数变量不一致: {self.var} 与 {other.var}")

    def _coerce(self, other) -> "FormalSeries":
        if isinstance(other, FormalSeries):
            self._check(other)
            return other
        return FormalSeries.constant(other, self.K, self.var)

    def __add__(self, other) -> "FormalSeries":
        other = self._coerce(other)
        K = min(self.K, other.K)
        return FormalSeries([self.coefs[k] + other.coefs[k] for k in range(K + 1)], K, self.var)

    __radd__ = __add__

    def __neg__(self) -> "FormalSeries":
        return FormalSeries([-c for c in self.coefs], self.K, self.var)

    def __sub__(self, other) -> "FormalSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "FormalSeries":
        return (-self) + other

    def __mul__(self, other) -> "FormalSeries":
        if not isinstance(other, FormalSeries):
            return FormalSeries([c * other for c in self.coefs], self.K, self.var)
        self._check(other)
        K = min(self.K, other.K)
        coefs = []
        for k in range(K + 1):
            coefs.append(sum((self.coefs[j] * other.coefs[k - j] for j in range(k + 1)), 0))
        return FormalSeries(coefs, K, self.var)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "FormalSeries":
        if not isinstance(power, int) or power < 0:
            raise JackkitError("只支持非负整数幂，其余请用 power_series")
        result = FormalSeries.constant(1, self.K, self.var)
        for _ in range(power):
            result = result * self
        return result

    def inverse(self) -> "FormalSeries":
        """1/f，要求 c_0 ≠ 0"""
        c0 = self.coefs[0]
        if c0 == 0:
            raise JackkitError("常数项为 0 的级数不可逆")
        inv = [1 / Fraction(c0) if isinstance(c0, Fraction) else 1 / c0]
        for k in range(1, self.K + 1):
            acc = sum((self.coefs[j] * inv[k - j] for j in range(1, k + 1)), 0)
            inv.append(-acc * inv[0])
        return FormalSeries(inv, self.K, self.var)

    def __truediv__(self, other) -> "FormalSeries":
        if isinstance(other, FormalSeries):
            return self * other.inverse()
        if isinstance(other, int):
            other = Fraction(other)
        return FormalSeries([c / other for c in self.coefs], self.K, self.var)

    def log(self) -> "FormalSeries":
        """log f，要求 c_0 = 1"""
        if self.coefs[0] != 1:
            raise JackkitError("log 要求常数项为 1")
        logs = [Fraction(0)]
        for k in range(1, self.K + 1):
            acc = k * self.coefs[k] - sum((j * logs[j] * self.coefs[k - j] for j in range(1, k)), 0)
            logs.append(acc / Fraction(k))
        return FormalSeries(logs, self.K, self.var)

    def exp(self) -> "FormalSeries":
        """exp g，要求 c_0 = 0"""
        if self.coefs[0] != 0:
            raise JackkitError("exp 要求常数项为 0")
        values = [Fraction(1)]
        for k in range(1, self.K + 1):
            acc = sum((j * self.coefs[j] * values[k - j] for j in range(1, k + 1)), 0)
            values.append(acc / Fraction(k))
        return FormalSeries(values, self.K, self.var)

    def power_series(self, e) -> "FormalSeries":
        """f^e = exp(e·log f)，要求 c_0 = 1"""
        return (self.log() * e).exp()

    def compose(self, inner: "FormalSeries") -> "FormalSeries":
        """f(g(t))，要求 g 的常数项为 0"""
        if inner.coefs[0] != 0:
            raise JackkitError("复合要求内层级数常数项为 0")
        K = min(self.K, inner.K)
        result = FormalSeries.constant(self.coefs[K], K, inner.var)
        for k in range(K - 1, -1, -1):
            result = result * inner + self.coefs[k]
        return result

    # ---- 访问 ----

    def coefficient(self, k: int):
        if k > self.K:
            raise JackkitError(f"系数 {k} 超出截断阶 {self.K}")
        return self.coefs[k]

    def __getitem__(self, k: int):
        return self.coefficient(k)

    def truncate(self, K: int) -> "FormalSeries":
        return FormalSeries(self.coefs[:K + 1], min(K, self.K), self.var)

    def with_var(self, var: str) -> "FormalSeries":
        return FormalSeries(self.coefs, self.K, var)

    def to_inverse_u(self) -> "FormalSeries":
        """
        下降阶乘基 → 1/u 幂级数

        1/(u(u−1)⋯(u−k+1)) = s^k ∏_{j<k} 1/(1 − j·s)，s = 1/u
        """
        if self.var != "ff":
            raise JackkitError("只有下降阶乘基级数可以转换到 1/u")
        result = FormalSeries.constant(0, self.K, "1/u")
        basis = FormalSeries.constant(1, self.K, "1/u")
        for k in range(self.K + 1):
            result = result + basis * self.coefs[k]
            # 乘上 s/(1 − k·s) 得到下一项
            basis = basis * FormalSeries.monomial(1, 1, self.K, "1/u") * FormalSeries.linear_ratio(0, -k, self.K)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSeries):
            return NotImplemented
        K = min(self.K, other.K)
        return self.var == other.var and all(self.coefs[k] == other.coefs[k] for k in range(K + 1))

    def first_difference(self, other: "FormalSeries"):
        """第一个不相等的系数下标，全部相等时返回 None"""
        for k in range(min(self.K, other.K) + 1):
            if self.coefs[k] != other.coefs[k]:
                return k
        return None

    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coefs)

    def __repr__(self) -> str:
        return f"FormalSeries(var={self.var!r}, K={self.K}, coefs={[str(c) for c in self.coefs]})"

    # ---- 序列化 ----

    def to_json(self) -> Dict[str, Any]:
        if not self.is_exact():
            raise JackkitError("只有精确系数的级数可以序列化")
        return {"var": self.var, "K": self.K, "coefs": [format_rational(c) for c in self.coefs]}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "FormalSeries":
        try:
            return cls([parse_rational(c) for c in data["coefs"]], int(data["K"]), data["var"])
        except (KeyError, TypeError) as e:
            raise ParseError(f"级数 JSON 格式错误: {e}") from None
