#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
收敛实验
沿 VK 序列比较 Φ_{λ(n)}(z, 1, …, 1) 与极限 ∏φ(z_j) 的一致误差，以及 g*_k、p*_m、能量的矩误差
"""

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, TextIO

import numpy as np

from jackkit.engine_config import get_engine_config, get_limit
from jackkit.errors import DeskScaleError, JackkitError, ParseError
from jackkit.jack_engine import JackEngine
from jackkit.links import float_one_point_measure, multi_point_phi, one_point_measure
from jackkit.measures import pstar_observable
from jackkit.partitions import as_theta, energy, format_rational
from jackkit.shifted_jack import gstar_value
from jackkit.specializations import energy_limit, limit_g, limit_phi_grid, limit_power_sums
from jackkit.vk import VkParams, VkSequence, vk_extract

logger = logging.getLogger(__name__)


@dataclass
class GridConfig:
    """环面采样网格：每个坐标 order 阶单位根的乘积网格，加上 random_points 个随机点"""
    order: int = 64
    random_points: int = 32
    seed: int = 0
    max_points: int = 4096   # 乘积网格的点数上限

    @classmethod
    def from_defaults(cls) -> "GridConfig":
        defaults = get_engine_config().experiment
        return cls(order=defaults.grid_order, random_points=defaults.random_points, seed=defaults.seed)


@dataclass
class ExperimentConfig:
    """收敛实验配置（对应实验配置 JSON）"""
    theta: Fraction
    sequence: VkSequence
    k: int = 1
    n_list: List[int] = field(default_factory=lambda: [50, 100, 200])
    grid: GridConfig = field(default_factory=GridConfig)
    moments_k: int = 4
    workers: int = 1
    allow_large: bool = False

    def __post_init__(self):
        self.theta = as_theta(self.theta)
        if isinstance(self.sequence, dict):
            self.sequence = VkSequence.from_dict(self.sequence)
        if isinstance(self.grid, dict):
            self.grid = GridConfig(**self.grid)
        if self.k < 1:
            raise JackkitError("环面维数 k 必须 ≥ 1")
        self.n_list = sorted(int(n) for n in self.n_list)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        defaults = get_engine_config().experiment
        try:
            grid = {"order": defaults.grid_order, "random_points": defaults.random_points, "seed": defaults.seed}
            grid.update(data.get("grid", {}))
            return cls(theta=data["theta"], sequence=data["sequence"], k=int(data.get("k", 1)),
                       n_list=data.get("n_list", [50, 100, 200]), grid=grid,
                       moments_k=int(data.get("moments_k", defaults.moments_k)),
                       workers=int(data.get("workers", defaults.workers)))
        except JackkitError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"实验配置格式错误: {e}") from None

    @classmethod
    def load(cls, path: str) -> "ExperimentConfig":
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return cls.from_dict(json.load(f))
        except (OSError, json.JSONDecodeError) as e:
            raise ParseError(f"无法读取实验配置 {path}: {e}") from None

    def to_dict(self) -> Dict[str, Any]:
        return {"theta": format_rational(self.theta), "sequence": self.sequence.to_dict(), "k": self.k,
                "n_list": self.n_list, "grid": asdict(self.grid), "moments_k": self.moments_k,
                "workers": self.workers}


@dataclass
class ExperimentRow:
    n: int
    sup_error: float
    moment_errors: List[float]
    pstar_errors: List[float]
    energy_error: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


# ---------------------------------------------------------------------------
# 网格与误差
# ---------------------------------------------------------------------------

def torus_grid(k: int, grid: GridConfig) -> np.ndarray:
    """
    形状 (m, k) 的环面点阵，先是单位根乘积网格（按字典序），后接随机点

    乘积网格超过 max_points 时，每个坐标的阶数降到 ⌊max_points^{1/k}⌋。
    """
    order = grid.order
    if order ** k > grid.max_points:
        order = max(2, int(round(grid.max_points ** (1.0 / k))))
        while order > 2 and order ** k > grid.max_points:
            order -= 1
        logger.info("k = %d 时每坐标单位根阶数降为 %d", k, order)
    roots = np.exp(2j * np.pi * np.arange(order) / order)
    mesh = np.stack(np.meshgrid(*([roots] * k), indexing="ij"), axis=-1).reshape(-1, k)
    rng = np.random.default_rng(grid.seed)
    angles = rng.uniform(0.0, 2 * np.pi, size=(grid.random_points, k))
    return np.vstack([mesh, np.exp(1j * angles)])


def sup_error(values: np.ndarray, limits: np.ndarray) -> float:
    return float(np.max(np.abs(np.asarray(values) - np.asarray(limits)))) if len(values) else 0.0


def phi_on_grid(lam: Sequence[int], theta, points: np.ndarray, allow_large: bool = False,
                engine: JackEngine = None) -> np.ndarray:
    """
    Φ_λ 在点阵上的值

    k = 1：n 在桌面规模内用精确一点测度，否则用浮点一点测度；k ≥ 2：只有精确路径。

    Raises:
        DeskScaleError: k ≥ 2 且 n 超过 max_variables
    """
    n = len(lam)
    k = points.shape[1]
    desk = n <= get_limit("max_variables")
    if k == 1:
        measure = one_point_measure(lam, theta, engine) if desk else float_one_point_measure(lam, theta)
        support = np.array(measure.support, dtype=float)
        masses = np.array([float(m) for m in measure.masses.values()])
        z = points[:, 0]
        return (masses[np.newaxis, :] * z[:, np.newaxis] ** support[np.newaxis, :]).sum(axis=1)
    if not desk and not allow_large:
        raise DeskScaleError(f"k ≥ 2 的精确路径只支持 n ≤ {get_limit('max_variables')}")
    if k > n:
        raise JackkitError(f"k = {k} 超过 n = {n}")
    engine = engine or JackEngine(theta)
    return np.array([multi_point_phi(lam, row, theta, engine) for row in points], dtype=complex)


def moment_errors(lam: Sequence[int], params: VkParams, theta, K: int) -> List[float]:
    """|g*_k(λ(n))/n^k − g(k)|，k = 1..K"""
    n = len(lam)
    limits = limit_g(params, theta, K)
    return [float(abs(gstar_value(k, lam, theta) / Fraction(n) ** k - limits[k])) for k in range(1, K + 1)]


def pstar_errors(lam: Sequence[int], params: VkParams, theta, K: int) -> List[float]:
    """|p*_m(λ(n))/n^m − p_m|，m = 1..K"""
    n = len(lam)
    limits = limit_power_sums(params, theta, K)
    return [float(abs(pstar_observable(m).evaluate(lam, theta) / Fraction(n) ** m - limits[m]))
            for m in range(1, K + 1)]


def _experiment_row(config: ExperimentConfig, params: VkParams, n: int) -> ExperimentRow:
    lam = config.sequence(n)
    theta = config.theta
    points = torus_grid(config.k, config.grid)
    values = phi_on_grid(lam, theta, points, config.allow_large)
    limits = limit_phi_grid(params, theta, points)
    row = ExperimentRow(
        n=n,
        sup_error=sup_error(values, limits),
        moment_errors=moment_errors(lam, params, theta, config.moments_k),
        pstar_errors=pstar_errors(lam, params, theta, config.moments_k),
        energy_error=float(abs(energy(lam, theta) / Fraction(n) ** 2 - energy_limit(params, theta))),
    )
    logger.info("n = %d: sup 误差 %.3e, 矩误差 %s", n, row.sup_error,
                ", ".join(f"{e:.3e}" for e in row.moment_errors))
    return row


def convergence_experiment(config: ExperimentConfig, params: Optional[VkParams] = None) -> List[ExperimentRow]:
    """
    对 n_list 中每个 n 计算一致误差与矩误差

    Args:
        config: 实验配置
        params: 极限参数，默认取序列的理论参数（显式序列用 vk_extract 的结果）

    Returns:
        List[ExperimentRow]: 按 n 排序
    """
    if params is None:
        params = config.sequence.limit_params()
    if params is None:
        params, _ = vk_extract(config.sequence, depth=4, n_max=max(config.n_list), ladder=config.n_list)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = [pool.submit(_experiment_row, config, params, n) for n in config.n_list]
            rows = [f.result() for f in futures]
    else:
        rows = [_experiment_row(config, params, n) for n in config.n_list]
    return sorted(rows, key=lambda r: r.n)


def fit_inverse_n(ns: Sequence[int], errors: Sequence[float]) -> float:
    """最小二乘拟合 e(n) ≈ c/n，返回 c"""
    x = 1.0 / np.asarray(ns, dtype=float)
    coef, *_ = np.linalg.lstsq(x[:, np.newaxis], np.asarray(errors, dtype=float), rcond=None)
    return float(coef[0])


# ---------------------------------------------------------------------------
# 输出
# ---------------------------------------------------------------------------

def write_csv(config: ExperimentConfig, rows: Sequence[ExperimentRow], stream: TextIO) -> None:
    """CSV 行 (n, sup_error, moment_err_1..K)，注释头记录 θ、序列与随机种子"""
    stream.write(f"# theta={format_rational(config.theta)}\n")
    stream.write(f"# sequence={json.dumps(config.sequence.to_dict(), sort_keys=True, ensure_ascii=False)}\n")
    stream.write(f"# seed={config.grid.seed}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["n", "sup_error"] + [f"moment_err_{k}" for k in range(1, config.moments_k + 1)])
    for row in rows:
        writer.writerow([row.n, repr(row.sup_error)] + [repr(e) for e in row.moment_errors])


def csv_text(config: ExperimentConfig, rows: Sequence[ExperimentRow]) -> str:
    buffer = io.StringIO()
    write_csv(config, rows, buffer)
    return buffer.getvalue()


def summary(config: ExperimentConfig, rows: Sequence[ExperimentRow], depth: int = 4) -> Dict[str, Any]:
    """JSON 摘要：配置、误差表、1/n 拟合、提取的 VK 参数与诊断"""
    admissible = [n for n in config.n_list if config.sequence.admissible(n)]
    extracted, diagnostics = vk_extract(config.sequence, depth, max(admissible), ladder=admissible)
    limit = config.sequence.limit_params()
    ns = [r.n for r in rows]
    return {
        "config": config.to_dict(),
        "rows": [r.to_dict() for r in rows],
        "fit": {"sup_error": fit_inverse_n(ns, [r.sup_error for r in rows]),
                "moment_errors": [fit_inverse_n(ns, [r.moment_errors[k] for r in rows])
                                  for k in range(config.moments_k)]},
        "limit_params": limit.to_dict() if limit else None,
        "extracted_params": extracted.to_dict(),
        "diagnostics": diagnostics,
    }
