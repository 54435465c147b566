#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
一点测度与增长估计
M_n 为 Φ_λ(z, 1, …, 1) 的 Laurent 系数；矩、阶乘矩与 g*_k 的关系，线性泛函不等式，
以及稳定观测量相对 max(𝔑(λ), n) 的增长比
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Sequence, Tuple

from sympy.functions.combinatorial.numbers import stirling

from jackkit.errors import JackkitError, error_response, success_response
from jackkit.jack_engine import JackEngine
from jackkit.partitions import (
    as_signature,
    as_theta,
    energy,
    falling_factorial,
    format_parts,
    format_rational,
    norm_N,
    parse_rational,
    pochhammer,
    rho_pairing,
    split_signature,
)
from jackkit.shifted_jack import gstar_value

logger = logging.getLogger(__name__)

_MASS_SLACK = 1e-9


@dataclass
class DiscreteMeasure:
    """整数上的概率测度"""
    masses: Dict[int, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.masses = {int(x): m for x, m in sorted(self.masses.items()) if m}
        if any(m < 0 for m in self.masses.values()):
            raise JackkitError("测度含负质量")
        total = self.total()
        exact = self.is_exact()
        if (exact and total != 1) or (not exact and abs(total - 1) > _MASS_SLACK):
            raise JackkitError(f"测度总质量为 {total}")

    @classmethod
    def point_mass(cls, x: int) -> "DiscreteMeasure":
        return cls({x: Fraction(1)})

    @property
    def support(self) -> List[int]:
        return list(self.masses)

    def total(self) -> Any:
        return sum(self.masses.values(), Fraction(0))

    def is_exact(self) -> bool:
        return all(isinstance(m, Fraction) for m in self.masses.values())

    def moment(self, m: int) -> Any:
        """∫ξ^m"""
        return sum((mass * Fraction(x) ** m for x, mass in self.masses.items()), Fraction(0))

    def factorial_moment(self, k: int) -> Any:
        """∫ξ(ξ−1)⋯(ξ−k+1)"""
        return sum((mass * falling_factorial(x, k) for x, mass in self.masses.items()), Fraction(0))

    def characteristic(self, z: complex) -> complex:
        """∫z^ξ"""
        return sum(float(mass) * complex(z) ** x for x, mass in self.masses.items())

    def to_dict(self) -> Dict[str, Any]:
        return {"support": self.support,
                "masses": [format_rational(m) if isinstance(m, Fraction) else m for m in self.masses.values()]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DiscreteMeasure":
        masses = [parse_rational(m) if isinstance(m, str) else m for m in data["masses"]]
        return cls(dict(zip(data["support"], masses)))


def measure_from_phi(lam: Sequence[int], theta, engine: JackEngine = None) -> DiscreteMeasure:
    """
    Φ_λ(z, 1, …, 1) 的 Laurent 系数组成的测度

    Args:
        lam: 长度为 n 的标号
        theta: θ
        engine: 可复用的 JackEngine
    """
    lam = as_signature(lam)
    engine = engine or JackEngine(theta)
    if len(lam) == 1:
        return DiscreteMeasure.point_mass(lam[0])
    principal = engine.principal_special(lam)
    laurent = engine.jack_P(lam).partial_laurent(1)
    return DiscreteMeasure({exps[0]: coef / principal for exps, coef in laurent.items()})


# ---------------------------------------------------------------------------
# 矩
# ---------------------------------------------------------------------------

def factorial_moment_from_gstar(lam: Sequence[int], k: int, theta) -> Fraction:
    """k!·g*_k(λ)/(nθ)_k"""
    theta = as_theta(theta)
    n = len(lam)
    return math.factorial(k) * gstar_value(k, lam, theta) / pochhammer(n * theta, k)


def moment_from_gstar(lam: Sequence[int], m: int, theta) -> Fraction:
    """∫ξ^m = Σ_j S(m, j)·j!·g*_j(λ)/(nθ)_j，S 为第二类 Stirling 数"""
    return sum((int(stirling(m, j)) * factorial_moment_from_gstar(lam, j, theta) for j in range(m + 1)),
               Fraction(0))


def second_moment(lam: Sequence[int], theta) -> Fraction:
    """𝔑(λ)²/(n(nθ + 1))"""
    theta = as_theta(theta)
    n = len(lam)
    return norm_N(lam, theta) / (n * (n * theta + 1))


def second_moment_check(lam: Sequence[int], theta, engine: JackEngine = None) -> dict:
    """
    ∫ξ² M_n 的三种算法逐一比较：测度本身、𝔑(λ)² 公式、g*_1 与 g*_2

    Returns:
        Dict: 结果字典
    """
    lam = as_signature(lam)
    theta = as_theta(theta)
    measure = measure_from_phi(lam, theta, engine)
    n = len(lam)
    values = {
        "measure": measure.moment(2),
        "norm": second_moment(lam, theta),
        "gstar": gstar_value(1, lam, theta) / (n * theta)
        + 2 * gstar_value(2, lam, theta) / (n * theta * (n * theta + 1)),
    }
    if len(set(values.values())) != 1:
        return error_response("二阶矩恒等式不成立",
                              counterexample={"lambda": list(lam), "theta": str(theta),
                                              **{k: str(v) for k, v in values.items()}})
    return success_response(f"二阶矩 = {values['norm']}: λ = {format_parts(lam)}",
                            second_moment=format_rational(values["norm"]))


def factorial_moment_check(lam: Sequence[int], theta, K: int, engine: JackEngine = None) -> dict:
    """∫ξ↓k M_n = k!·g*_k(λ)/(nθ)_k，k ≤ K"""
    lam = as_signature(lam)
    measure = measure_from_phi(lam, theta, engine)
    for k in range(K + 1):
        left = measure.factorial_moment(k)
        right = factorial_moment_from_gstar(lam, k, theta)
        if left != right:
            return error_response("阶乘矩恒等式不成立",
                                  counterexample={"lambda": list(lam), "k": k,
                                                  "measure": str(left), "gstar": str(right)})
    return success_response(f"阶乘矩恒等式成立到 k = {K}: λ = {format_parts(lam)}")


def moment_ratio(lam: Sequence[int], theta) -> float:
    """∫ξ⁴ / (∫ξ²)²，M_n 的紧性诊断；点测度 0 返回 0"""
    second = moment_from_gstar(lam, 2, theta)
    if second == 0:
        return 0.0
    return float(moment_from_gstar(lam, 4, theta) / second ** 2)


# ---------------------------------------------------------------------------
# 线性泛函不等式
# ---------------------------------------------------------------------------

def _as_fractions(lam: Sequence) -> Tuple[Fraction, ...]:
    values = tuple(parse_rational(v) if isinstance(v, str) else Fraction(v) for v in lam)
    if any(values[i] < values[i + 1] for i in range(len(values) - 1)):
        raise JackkitError(f"λ 不是弱递减的: {[str(v) for v in values]}")
    return values


def linear_functional(lam: Sequence, m: int) -> Fraction:
    """l_m(λ) = Σλ_i (i − 1)^m"""
    return sum((v * Fraction(i) ** m for i, v in enumerate(_as_fractions(lam))), Fraction(0))


def linear_bound(lam: Sequence, m: int) -> Fraction:
    """|Σλ_i| n^m + 2(λ, 2ρ) n^{m−1}"""
    lam = _as_fractions(lam)
    n = len(lam)
    return abs(sum(lam)) * Fraction(n) ** m + 2 * rho_pairing(lam) * Fraction(n) ** (m - 1)


def linear_bound_check(lam: Sequence, m: int) -> bool:
    """
    |Σλ_i (i−1)^m| ≤ |Σλ_i| n^m + 2(λ,2ρ) n^{m−1}，精确有理运算

    Args:
        lam: 弱递减的实数（有理数）向量
        m: 非负整数
    """
    return abs(linear_functional(lam, m)) <= linear_bound(lam, m)


def linear_bound_extreme_point(n: int, k: int) -> Tuple[Fraction, ...]:
    """
    单纯形 {Σλ_i = 0, (λ,2ρ) = n} 的顶点 (1/k ×k, −1/(n−k) ×(n−k))，1 ≤ k ≤ n−1
    """
    if not 1 <= k < n:
        raise JackkitError(f"k = {k} 不在 [1, {n - 1}] 内")
    return (Fraction(1, k),) * k + (Fraction(-1, n - k),) * (n - k)


def linear_bound_extreme_check(n: int, m: int) -> dict:
    """全部顶点满足 |l_m| ≤ 2n^m"""
    bound = 2 * Fraction(n) ** m
    for k in range(1, n):
        point = linear_bound_extreme_point(n, k)
        value = abs(linear_functional(point, m))
        if value > bound:
            return error_response("顶点处的线性泛函超出 2n^m",
                                  counterexample={"n": n, "k": k, "m": m, "value": str(value)})
    return success_response(f"n = {n}, m = {m} 的全部顶点满足 |l_m| ≤ 2n^m")


def split_weight_bound(lam: Sequence[int]) -> dict:
    """
    Σ_{i<j}(λ_i − λ_j) ≥ q|λ⁺| + p|λ⁻| = (n/2)(|λ⁺| + |λ⁻|) + ((q − p)/2)Σλ_i

    p = ℓ(λ⁺)，q = n − p。
    """
    lam = as_signature(lam)
    n = len(lam)
    plus, minus = split_signature(lam)
    p = len(plus)
    q = n - p
    pairing = rho_pairing(lam)
    cross = q * sum(plus) + p * sum(minus)
    rewritten = Fraction(n, 2) * (sum(plus) + sum(minus)) + Fraction(q - p, 2) * sum(lam)
    if cross != rewritten or pairing < cross:
        return error_response("分块下界不成立",
                              counterexample={"lambda": list(lam), "pairing": str(pairing),
                                              "cross": str(cross), "rewritten": str(rewritten)})
    return success_response("分块下界成立", pairing=str(pairing), cross=str(cross))


# ---------------------------------------------------------------------------
# 增长比
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StableObservable:
    """Λ^θ 中的元素：名称、次数与在标号上的取值"""
    name: str
    degree: int
    evaluate: Callable[[Tuple[int, ...], Fraction], Fraction]


def gstar_observable(k: int) -> StableObservable:
    return StableObservable(f"g*_{k}", k, lambda lam, theta: gstar_value(k, lam, theta))


def pstar_observable(m: int) -> StableObservable:
    """p*_m = Σ((λ_i − θi)^m − (−θi)^m)"""

    def value(lam, theta):
        theta = Fraction(theta)
        return sum(((p - theta * i) ** m - (-theta * i) ** m for i, p in enumerate(lam, start=1)), Fraction(0))

    return StableObservable(f"p*_{m}", m, value)


def energy_observable() -> StableObservable:
    return StableObservable("E", 2, lambda lam, theta: energy(lam, theta))


def growth_ratio(f: StableObservable, family: Iterable[Sequence[int]], theta) -> Dict[str, Any]:
    """
    |f(λ)| / max(𝔑(λ), n)^{deg f} 在一族标号上的经验上确界

    Returns:
        Dict: {"sup": float, "argmax": λ, "count": int}
    """
    theta = as_theta(theta)
    best, argmax, count = 0.0, None, 0
    for lam in family:
        lam = as_signature(lam)
        scale = max(math.sqrt(norm_N(lam, theta)), len(lam))
        ratio = abs(float(f.evaluate(lam, theta))) / scale ** f.degree
        count += 1
        if argmax is None or ratio > best:
            best, argmax = ratio, lam
    logger.debug("增长比 %s: sup = %.6g（%d 个标号）", f.name, best, count)
    return {"observable": f.name, "sup": best, "argmax": list(argmax) if argmax else None, "count": count}
