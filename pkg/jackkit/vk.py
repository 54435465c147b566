#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Vershik–Kerov 参数与序列
VkParams 六元组 (α±, β±, γ±)，参数化序列目录，以及从有限 n 外推极限参数
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from jackkit.engine_config import get_tolerance
from jackkit.errors import InvalidParametersError, SequenceConventionError
from jackkit.partitions import (
    conjugate_part,
    format_rational,
    merge_signature,
    parse_rational,
    split_signature,
)

logger = logging.getLogger(__name__)

_FLOAT_SLACK = 1e-9


def _number(value):
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, int):
        return Fraction(value)
    return value


def _encode(value):
    return format_rational(value) if isinstance(value, Fraction) else value


@dataclass
class VkParams:
    """VK 参数 (α⁺, β⁺, γ⁺ / α⁻, β⁻, γ⁻)"""
    alpha_plus: List = field(default_factory=list)
    beta_plus: List = field(default_factory=list)
    gamma_plus: Any = 0
    alpha_minus: List = field(default_factory=list)
    beta_minus: List = field(default_factory=list)
    gamma_minus: Any = 0

    def __post_init__(self):
        for name in ("alpha_plus", "beta_plus", "alpha_minus", "beta_minus"):
            values = [_number(v) for v in getattr(self, name)]
            if any(v < 0 for v in values):
                raise InvalidParametersError(f"{name} 含负数: {values}")
            if any(values[i] < values[i + 1] - _FLOAT_SLACK for i in range(len(values) - 1)):
                raise InvalidParametersError(f"{name} 不是弱递减的: {values}")
            setattr(self, name, values)
        self.gamma_plus = _number(self.gamma_plus)
        self.gamma_minus = _number(self.gamma_minus)
        if self.gamma_plus < 0 or self.gamma_minus < 0:
            raise InvalidParametersError("γ± 必须非负")
        if self.beta_plus_1 + self.beta_minus_1 > 1 + _FLOAT_SLACK:
            raise InvalidParametersError(f"β⁺₁ + β⁻₁ = {self.beta_plus_1 + self.beta_minus_1} > 1")

    @property
    def beta_plus_1(self):
        return self.beta_plus[0] if self.beta_plus else 0

    @property
    def beta_minus_1(self):
        return self.beta_minus[0] if self.beta_minus else 0

    def side(self, sign: int) -> Tuple[List, List, Any]:
        """+ 侧或 − 侧的 (α, β, γ)"""
        if sign > 0:
            return self.alpha_plus, self.beta_plus, self.gamma_plus
        return self.alpha_minus, self.beta_minus, self.gamma_minus

    def delta(self, sign: int):
        alpha, beta, gamma = self.side(sign)
        return sum(alpha, 0) + sum(beta, 0) + gamma

    def is_exact(self) -> bool:
        values = self.alpha_plus + self.beta_plus + self.alpha_minus + self.beta_minus
        return all(isinstance(v, Fraction) for v in values + [self.gamma_plus, self.gamma_minus])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha_plus": [_encode(v) for v in self.alpha_plus],
            "beta_plus": [_encode(v) for v in self.beta_plus],
            "gamma_plus": _encode(self.gamma_plus),
            "alpha_minus": [_encode(v) for v in self.alpha_minus],
            "beta_minus": [_encode(v) for v in self.beta_minus],
            "gamma_minus": _encode(self.gamma_minus),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VkParams":
        return cls(**{key: data.get(key, [] if key.startswith(("alpha", "beta")) else 0)
                      for key in ("alpha_plus", "beta_plus", "gamma_plus",
                                  "alpha_minus", "beta_minus", "gamma_minus")})


def staircase(boxes: int) -> List[int]:
    """约 √(2·boxes) 行的阶梯形分拆，总格数恰为 boxes"""
    if boxes <= 0:
        return []
    size = (math.isqrt(8 * boxes + 1) - 1) // 2
    parts = list(range(size, 0, -1))
    # 余数 < size + 1，补到前几行后仍弱递减
    for i in range(boxes - size * (size + 1) // 2):
        parts[i] += 1
    return parts


def _side_partition(alpha: Sequence, beta: Sequence, gamma, n: int) -> List[int]:
    """λ±_i = ⌊α_i n⌋ + #{j : ⌊β_j n⌋ ≥ i} + 阶梯（⌊γn⌋ 格）"""
    rows = [math.floor(a * n) for a in alpha]
    cols = [math.floor(b * n) for b in beta]
    stair = staircase(math.floor(gamma * n))
    size = max([len(rows), len(stair)] + cols + [0])
    parts = []
    for i in range(1, size + 1):
        value = (rows[i - 1] if i <= len(rows) else 0)
        value += sum(1 for c in cols if c >= i)
        value += stair[i - 1] if i <= len(stair) else 0
        parts.append(value)
    while parts and parts[-1] == 0:
        parts.pop()
    return parts


CATALOG = ("zero", "row", "column", "mixed", "gamma", "params", "explicit")


@dataclass
class VkSequence:
    """
    标号序列 λ(n)，第 n 项长度恰为 n

    kind:
        zero    : λ(n) = 0ⁿ
        row     : λ⁺ 的行 ⌊a_i n⌋
        column  : λ⁺ 的列 ⌊b_i n⌋
        mixed   : 正负两侧的行（α⁺, α⁻）
        gamma   : ⌊γn⌋ 个格子排成阶梯，side 取 +1 或 −1
        params  : 由完整的 VkParams 构造
        explicit: 配置中逐个给出的标号
    """
    kind: str
    params: VkParams = field(default_factory=VkParams)
    explicit: Dict[int, Tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in CATALOG:
            raise InvalidParametersError(f"未知的序列类型: {self.kind}")
        if isinstance(self.params, dict):
            self.params = VkParams.from_dict(self.params)
        self.explicit = {int(n): tuple(v) for n, v in self.explicit.items()}

    # ---- 目录 ----

    @classmethod
    def zero(cls) -> "VkSequence":
        return cls("zero")

    @classmethod
    def row(cls, *alpha) -> "VkSequence":
        return cls("row", VkParams(alpha_plus=list(alpha)))

    @classmethod
    def column(cls, *beta) -> "VkSequence":
        return cls("column", VkParams(beta_plus=list(beta)))

    @classmethod
    def mixed(cls, alpha_plus: Sequence, alpha_minus: Sequence) -> "VkSequence":
        return cls("mixed", VkParams(alpha_plus=list(alpha_plus), alpha_minus=list(alpha_minus)))

    @classmethod
    def gamma(cls, gamma, side: int = 1) -> "VkSequence":
        if side > 0:
            return cls("gamma", VkParams(gamma_plus=gamma))
        return cls("gamma", VkParams(gamma_minus=gamma))

    @classmethod
    def from_params(cls, params: VkParams) -> "VkSequence":
        return cls("params", params)

    @classmethod
    def from_explicit(cls, signatures: Dict[int, Sequence[int]]) -> "VkSequence":
        return cls("explicit", explicit=signatures)

    # ---- 生成 ----

    def admissible(self, n: int) -> bool:
        return n in self.explicit if self.kind == "explicit" else n >= 1

    def __call__(self, n: int) -> Tuple[int, ...]:
        """
        第 n 项

        Raises:
            SequenceConventionError: 长度不等于 n 或 n 不可用
        """
        if self.kind == "explicit":
            if n not in self.explicit:
                raise SequenceConventionError(f"显式序列没有第 {n} 项")
            lam = self.explicit[n]
            if len(lam) != n:
                raise SequenceConventionError(f"第 {n} 项的长度为 {len(lam)}")
            return lam
        if self.kind == "zero":
            return (0,) * n
        p = self.params
        plus = _side_partition(p.alpha_plus, p.beta_plus, p.gamma_plus, n)
        minus = _side_partition(p.alpha_minus, p.beta_minus, p.gamma_minus, n)
        try:
            return merge_signature(plus, minus, n)
        except Exception as e:
            raise SequenceConventionError(f"第 {n} 项放不进长度 n: {e}") from None

    def limit_params(self) -> Optional[VkParams]:
        """参数化序列的理论极限参数；显式序列返回 None"""
        if self.kind == "explicit":
            return None
        return self.params

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind}
        if self.kind == "explicit":
            data["signatures"] = {str(n): list(v) for n, v in sorted(self.explicit.items())}
        elif self.kind != "zero":
            data["params"] = self.params.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VkSequence":
        kind = data.get("kind")
        if kind == "explicit":
            return cls.from_explicit({int(n): v for n, v in data.get("signatures", {}).items()})
        if kind == "row":
            return cls.row(*data.get("alpha", data.get("params", {}).get("alpha_plus", [])))
        if kind == "column":
            return cls.column(*data.get("beta", data.get("params", {}).get("beta_plus", [])))
        if kind == "mixed":
            params = data.get("params", {})
            return cls.mixed(data.get("alpha_plus", params.get("alpha_plus", [])),
                             data.get("alpha_minus", params.get("alpha_minus", [])))
        if kind == "gamma" and "gamma" in data:
            return cls.gamma(data["gamma"], int(data.get("side", 1)))
        return cls(kind or "zero", VkParams.from_dict(data.get("params", {})))


# ---------------------------------------------------------------------------
# 参数提取
# ---------------------------------------------------------------------------

def default_ladder(n_max: int, points: int = 6) -> List[int]:
    """n_max/16 到 n_max 的几何阶梯"""
    ladder = np.unique(np.geomspace(max(8, n_max // 16), n_max, points).astype(int))
    return [int(n) for n in ladder]


def _extrapolate(ns: Sequence[int], values: Sequence[float]) -> Tuple[float, float]:
    """
    最小二乘外推到 n → ∞

    设计矩阵 [1, n^{−1/2}, n^{−1}]：1/n 修正来自取整，n^{−1/2} 修正来自阶梯形。
    点数不足时退化为 [1, n^{−1}]。

    Returns:
        Tuple: (极限估计, 最大残差)
    """
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=float)
    columns = [np.ones_like(ns), ns ** -0.5, 1.0 / ns] if len(ns) > 3 else [np.ones_like(ns), 1.0 / ns]
    design = np.column_stack(columns)
    coef, *_ = np.linalg.lstsq(design, values, rcond=None)
    residual = float(np.max(np.abs(design @ coef - values))) if len(ns) else 0.0
    return float(coef[0]), residual


def vk_extract(seq: VkSequence, depth: int, n_max: int, ladder: Sequence[int] = None) -> Tuple[VkParams, Dict[str, Any]]:
    """
    有限 n 的估计 α_i = λ±_i/n, β_i = λ±′_i/n, δ = |λ±|/n（i ≤ depth），外推到极限

    γ± = δ± − Σ(α± + β±)；负值不截断计算，只在报告中截断为 0 并标记。

    Returns:
        Tuple: (VkParams, 诊断信息)
    """
    ns = list(ladder) if ladder else default_ladder(n_max)
    ns = [n for n in ns if seq.admissible(n)]
    if not ns:
        raise SequenceConventionError("没有可用的 n")
    residual_tol = get_tolerance("extrapolation_residual")
    floor = get_tolerance("parameter_floor")
    gamma_tol = get_tolerance("gamma_negative")
    estimates: Dict[str, List[List[float]]] = {}
    for n in ns:
        lam = seq(n)
        if len(lam) != n:
            raise SequenceConventionError(f"第 {n} 项的长度为 {len(lam)}")
        for sign, part in zip(("plus", "minus"), split_signature(lam)):
            row = [part[i] / n if i < len(part) else 0.0 for i in range(depth)]
            col = [conjugate_part(part, i + 1) / n for i in range(depth)]
            estimates.setdefault(f"alpha_{sign}", []).append(row)
            estimates.setdefault(f"beta_{sign}", []).append(col)
            estimates.setdefault(f"delta_{sign}", []).append([sum(part) / n])

    diagnostics: Dict[str, Any] = {"n": ns, "flagged": []}
    limits: Dict[str, List[float]] = {}
    for name, table in estimates.items():
        table = np.asarray(table)
        values, residuals = [], []
        for column in table.T:
            value, residual = _extrapolate(ns, column)
            values.append(value)
            residuals.append(residual)
            if residual > residual_tol:
                diagnostics["flagged"].append(f"{name}[{len(values) - 1}]")
        limits[name] = values
        diagnostics[f"{name}_residual"] = residuals
        diagnostics[f"{name}_finite"] = table[-1].tolist()

    params = {}
    for sign in ("plus", "minus"):
        alpha = sorted((v for v in limits[f"alpha_{sign}"] if v > floor), reverse=True)
        beta = sorted((v for v in limits[f"beta_{sign}"] if v > floor), reverse=True)
        raw_gamma = limits[f"delta_{sign}"][0] - sum(limits[f"alpha_{sign}"]) - sum(limits[f"beta_{sign}"])
        diagnostics[f"gamma_{sign}_raw"] = raw_gamma
        if raw_gamma < -gamma_tol:
            diagnostics["flagged"].append(f"gamma_{sign}_negative")
        params[f"alpha_{sign}"] = alpha
        params[f"beta_{sign}"] = beta
        params[f"gamma_{sign}"] = max(raw_gamma, 0.0) if raw_gamma > floor else 0.0
    logger.info("VK 参数提取: n=%s, 标记=%s", ns, diagnostics["flagged"])
    return VkParams(**params), diagnostics
