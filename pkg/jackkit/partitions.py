#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
分拆与标号（signature）
格子统计量 a, a′, l, l′ 以及各模块共用的标量：H, H′, (t)_μ, z_λ, 𝔑(λ)²

分拆用去掉末尾零的整数元组表示，标号用长度为 n 的整数元组表示（零有意义）。
所有精确量使用 fractions.Fraction。
"""

import itertools
import math
import re
from collections import Counter
from fractions import Fraction
from typing import Iterable, Iterator, List, NamedTuple, Sequence, Tuple, Union

from jackkit.errors import (
    CellOutsideDiagramError,
    InvalidParametersError,
    InvalidPartitionError,
    ParseError,
)

Partition = Tuple[int, ...]
Signature = Tuple[int, ...]
Rational = Union[int, Fraction]


class Cell(NamedTuple):
    """Young 图中的格子，行列均从 1 开始"""
    row: int
    col: int


def as_theta(value: Union[int, str, Fraction]) -> Fraction:
    """
    把输入规范化为正有理数 θ

    Args:
        value: 整数、Fraction 或 "p/q" 字符串

    Returns:
        Fraction: θ

    Raises:
        InvalidParametersError: θ ≤ 0 或不是有理数
    """
    if isinstance(value, str):
        theta = parse_rational(value)
    elif isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        theta = Fraction(value)
    else:
        raise InvalidParametersError(f"θ 必须是正有理数: {value!r}")
    if theta <= 0:
        raise InvalidParametersError(f"θ 必须为正: {value!r}")
    return theta


def _check_decreasing(parts: Sequence[int]) -> None:
    for i in range(len(parts) - 1):
        if parts[i] < parts[i + 1]:
            raise InvalidPartitionError(f"序列不是弱递减的: {list(parts)}")
    if any(not isinstance(p, int) or isinstance(p, bool) for p in parts):
        raise InvalidPartitionError(f"分量必须是整数: {list(parts)}")


def as_partition(parts: Iterable[int]) -> Partition:
    """
    校验并规范化分拆（去掉末尾零）

    Raises:
        InvalidPartitionError: 非递减或含负数
    """
    parts = tuple(parts)
    _check_decreasing(parts)
    if parts and parts[-1] < 0:
        raise InvalidPartitionError(f"分拆不能含负分量: {list(parts)}")
    return strip_zeros(parts)


def as_signature(parts: Iterable[int]) -> Signature:
    """
    校验标号：弱递减、长度至少为 1

    Raises:
        InvalidPartitionError: 不满足约束
    """
    parts = tuple(parts)
    if not parts:
        raise InvalidPartitionError("标号长度 n 必须 ≥ 1")
    _check_decreasing(parts)
    return parts


def strip_zeros(parts: Sequence[int]) -> Partition:
    end = len(parts)
    while end > 0 and parts[end - 1] == 0:
        end -= 1
    return tuple(parts[:end])


def pad(parts: Sequence[int], n: int) -> Tuple[int, ...]:
    """用零补齐到长度 n"""
    if len(parts) > n:
        if any(parts[n:]):
            raise InvalidPartitionError(f"{list(parts)} 的长度超过 {n}")
        return tuple(parts[:n])
    return tuple(parts) + (0,) * (n - len(parts))


def length(parts: Sequence[int]) -> int:
    """非零分量个数 ℓ(λ)"""
    return sum(1 for p in parts if p != 0)


def weight(parts: Sequence[int]) -> int:
    """|λ|"""
    return sum(parts)


def is_partition(parts: Sequence[int]) -> bool:
    try:
        as_partition(parts)
    except InvalidPartitionError:
        return False
    return True


def conjugate(lam: Sequence[int]) -> Partition:
    """λ′_j = #{i : λ_i ≥ j}"""
    lam = as_partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def conjugate_part(lam: Sequence[int], j: int) -> int:
    """只计算 λ′_j，适合很长的行"""
    return sum(1 for p in lam if p >= j)


def split_signature(lam: Sequence[int]) -> Tuple[Partition, Partition]:
    """
    λ → (λ⁺, λ⁻)

    λ⁺ 为正分量，λ⁻ 为非正尾部取反并倒序，去掉零。
    """
    lam = as_signature(lam)
    plus = tuple(p for p in lam if p > 0)
    minus = tuple(-p for p in reversed(lam) if p < 0)
    return plus, minus


def merge_signature(plus: Sequence[int], minus: Sequence[int], n: int) -> Signature:
    """split_signature 的逆：把 λ⁺ 与取反倒序的 λ⁻ 用零补齐到长度 n"""
    plus = as_partition(plus)
    minus = as_partition(minus)
    zeros = n - len(plus) - len(minus)
    if zeros < 0:
        raise InvalidPartitionError(f"ℓ(λ⁺) + ℓ(λ⁻) = {len(plus) + len(minus)} 超过 n = {n}")
    return plus + (0,) * zeros + tuple(-p for p in reversed(minus))


def cells(lam: Sequence[int]) -> Iterator[Cell]:
    for i, row in enumerate(as_partition(lam), start=1):
        for j in range(1, row + 1):
            yield Cell(i, j)


def cell_stats(lam: Sequence[int], cell: Tuple[int, int]) -> Tuple[int, int, int, int]:
    """
    格子统计量

    Args:
        lam: 分拆
        cell: (i, j)

    Returns:
        Tuple: (a, a′, l, l′) = (λ_i − j, j − 1, λ′_j − i, i − 1)

    Raises:
        CellOutsideDiagramError: 格子不在图内
    """
    lam = as_partition(lam)
    i, j = cell
    if i < 1 or j < 1 or i > len(lam) or j > lam[i - 1]:
        raise CellOutsideDiagramError(f"格子 ({i}, {j}) 不在 {list(lam)} 的图内")
    return lam[i - 1] - j, j - 1, conjugate_part(lam, j) - i, i - 1


def _hook_product(lam: Sequence[int], theta: Rational, shift: Rational) -> Fraction:
    lam = as_partition(lam)
    conj = conjugate(lam)
    result = Fraction(1)
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            arm = row - j
            leg = conj[j - 1] - i
            result *= arm + theta * leg + shift
    return result


def hook_H(lam: Sequence[int], theta: Rational) -> Fraction:
    """H(λ) = ∏(a + θl + 1)"""
    return _hook_product(lam, Fraction(theta), 1)


def hook_Hprime(lam: Sequence[int], theta: Rational) -> Fraction:
    """H′(λ) = ∏(a + θl + θ)"""
    theta = Fraction(theta)
    return _hook_product(lam, theta, theta)


def shifted_factorial(t: Rational, mu: Sequence[int], theta: Rational) -> Fraction:
    """广义移位阶乘 (t)_μ = ∏(t + a′ − θl′)"""
    t = Fraction(t)
    theta = Fraction(theta)
    result = Fraction(1)
    for i, row in enumerate(as_partition(mu)):
        for j in range(row):
            result *= t + j - theta * i
    return result


def pochhammer(t, m: int):
    """上升阶乘 (t)_m，系数类型随 t"""
    result = 1
    for j in range(m):
        result *= t + j
    return result


def falling_factorial(x, m: int):
    """x(x−1)⋯(x−m+1)"""
    result = 1
    for j in range(m):
        result *= x - j
    return result


def rho_pairing(lam: Sequence) -> Fraction:
    """(λ, 2ρ) = Σ_{i<j}(λ_i − λ_j)"""
    n = len(lam)
    return sum((Fraction(n + 1 - 2 * i) * lam[i - 1] for i in range(1, n + 1)), Fraction(0))


def norm_N(lam: Sequence[int], theta: Rational) -> Fraction:
    """𝔑(λ)² = Σλ_i² + θ(Σλ_i)² + θ(λ, 2ρ)"""
    lam = as_signature(lam)
    theta = Fraction(theta)
    total = sum(lam)
    return Fraction(sum(p * p for p in lam)) + theta * total * total + theta * rho_pairing(lam)


def z_lambda(lam: Sequence[int]) -> int:
    """z_λ = ∏ k^{m_k} m_k!"""
    result = 1
    for part, mult in Counter(as_partition(lam)).items():
        result *= part ** mult * math.factorial(mult)
    return result


def energy(lam: Sequence[int], theta: Rational) -> Fraction:
    """E(λ) = ½Σλ_i² + θΣ(n − i)λ_i"""
    lam = as_signature(lam)
    theta = Fraction(theta)
    n = len(lam)
    return Fraction(sum(p * p for p in lam), 2) + theta * sum((n - i) * p for i, p in enumerate(lam, start=1))


def contains(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """μ ⊆ λ（Young 图包含）"""
    mu = as_partition(mu)
    lam = as_partition(lam)
    if len(mu) > len(lam):
        return False
    return all(m <= l for m, l in zip(mu, lam))


def dominates(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """λ ≥ μ（支配序），要求 |λ| = |μ|"""
    lam = as_partition(lam)
    mu = as_partition(mu)
    if sum(lam) != sum(mu):
        return False
    size = max(len(lam), len(mu))
    lam_sums = itertools.accumulate(pad(lam, size))
    mu_sums = itertools.accumulate(pad(mu, size))
    return all(a >= b for a, b in zip(lam_sums, mu_sums))


def interlaces(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """μ ≺ λ：λ_1 ≥ μ_1 ≥ λ_2 ≥ … ≥ μ_{n−1} ≥ λ_n"""
    if len(mu) != len(lam) - 1:
        return False
    return all(lam[i] >= mu[i] >= lam[i + 1] for i in range(len(mu)))


def interlacing_children(lam: Sequence[int]) -> List[Signature]:
    """全部 μ ≺ λ，长度 n − 1，逆字典序（从大到小）"""
    ranges = [range(lam[i], lam[i + 1] - 1, -1) for i in range(len(lam) - 1)]
    return [tuple(mu) for mu in itertools.product(*ranges)]


def count_children(lam: Sequence[int]) -> int:
    return math.prod(lam[i] - lam[i + 1] + 1 for i in range(len(lam) - 1))


def partitions_of(k: int, max_parts: int = None, max_part: int = None) -> List[Partition]:
    """
    |λ| = k 的全部分拆，逆字典序（(k) 在前）

    Args:
        k: 权
        max_parts: 分量个数上界
        max_part: 最大分量上界
    """
    if max_part is None:
        max_part = k
    if max_parts is None:
        max_parts = k

    def build(remaining: int, cap: int, slots: int) -> Iterator[Partition]:
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in build(remaining - first, first, slots - 1):
                yield (first,) + rest

    return list(build(k, max_part, max_parts))


def partitions_up_to(max_weight: int, max_parts: int = None) -> List[Partition]:
    """|λ| ≤ max_weight 的分拆，按权递增、权相同按字典序递增（graded-lex）"""
    result = []
    for k in range(max_weight + 1):
        result.extend(reversed(partitions_of(k, max_parts)))
    return result


def signatures_in_box(n: int, lo: int, hi: int) -> List[Signature]:
    """分量在 [lo, hi] 内、长度为 n 的全部标号"""
    return [tuple(reversed(c)) for c in itertools.combinations_with_replacement(range(lo, hi + 1), n)]


_PARTS_BODY = r"\s*(?:-?\d+\s*(?:,\s*-?\d+\s*)*)?"
_PARTS_RE = re.compile(rf"\[{_PARTS_BODY}\]|{_PARTS_BODY}")


def parse_parts(text: str) -> Tuple[int, ...]:
    """
    解析 "[3,1,-2]" 形式的整数列表

    Raises:
        ParseError: 格式错误
    """
    if _PARTS_RE.fullmatch(text.strip()) is None:
        raise ParseError(f"无法解析分拆: {text!r}")
    body = text.strip().strip("[]").strip()
    if not body:
        return ()
    return tuple(int(p) for p in body.split(","))


def format_parts(parts: Sequence[int]) -> str:
    return "[" + ",".join(str(p) for p in parts) + "]"


def parse_rational(text: str) -> Fraction:
    """
    解析 "p/q" 或整数

    Raises:
        ParseError: 格式错误
    """
    try:
        if re.fullmatch(r"\s*-?\d+\s*(/\s*\d+\s*)?", text) is None:
            raise ValueError(text)
        return Fraction(text.replace(" ", ""))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"无法解析有理数: {text!r}") from None


def format_rational(value: Rational) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
