#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
计算引擎配置管理
统一管理桌面规模限制、数值容差和实验默认值，持久化为 JSON
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = "engine_config.json"
CONFIG_ENV = "JACKKIT_CONFIG"
CACHE_ENV = "JACKKIT_CACHE_DIR"


@dataclass
class DeskLimits:
    """精确计算的规模上限"""
    max_part: int = 12            # |λ_i| 上限
    max_variables: int = 10       # n 上限
    max_oracle_weight: int = 8    # Gram–Schmidt / 插值预言机的 |λ| 上限
    max_series_order: int = 12    # 级数截断阶上限
    max_children: int = 200000    # 浮点链接枚举的子标号数上限


@dataclass
class Tolerances:
    """数值容差"""
    torus: float = 1e-12                   # |z| = 1 的容差
    complex_compare: float = 1e-9          # 浮点复数比较
    extrapolation_residual: float = 1e-3   # VK 外推残差阈值
    gamma_negative: float = 1e-3           # γ 负值报警阈值
    parameter_floor: float = 1e-6          # 外推后视为 0 的参数


@dataclass
class ExperimentDefaults:
    """收敛实验的默认值"""
    grid_order: int = 64
    random_points: int = 32
    seed: int = 0
    moments_k: int = 4
    workers: int = 1


@dataclass
class EngineConfig:
    """引擎配置"""
    limits: DeskLimits = field(default_factory=DeskLimits)
    tolerances: Tolerances = field(default_factory=Tolerances)
    experiment: ExperimentDefaults = field(default_factory=ExperimentDefaults)
    validate_closed_forms: bool = True   # 用链求和校验主特化闭式

    def __post_init__(self):
        if isinstance(self.limits, dict):
            self.limits = DeskLimits(**self.limits)
        if isinstance(self.tolerances, dict):
            self.tolerances = Tolerances(**self.tolerances)
        if isinstance(self.experiment, dict):
            self.experiment = ExperimentDefaults(**self.experiment)


class EngineConfigManager:
    """引擎配置管理器"""

    def __init__(self, config_file: Optional[str] = None, create_missing: bool = False):
        """
        初始化配置管理器

        Args:
            config_file: 配置文件路径，默认取环境变量 JACKKIT_CONFIG，否则为 engine_config.json
            create_missing: 文件不存在时是否写出默认配置
        """
        self.config_file = config_file or os.environ.get(CONFIG_ENV, DEFAULT_CONFIG_FILE)
        self.create_missing = create_missing
        self._config: Optional[EngineConfig] = None

    def load_config(self) -> EngineConfig:
        """
        加载配置，文件不存在时使用默认配置（create_missing 为真时同时写出）

        Returns:
            EngineConfig: 配置对象
        """
        if self._config is not None:
            return self._config

        try:
            if os.path.exists(self.config_file):
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    self._config = EngineConfig(**json.load(f))
            else:
                self._config = EngineConfig()
                if self.create_missing:
                    self.save_config()
        except (OSError, TypeError, ValueError) as e:
            logger.warning("加载引擎配置失败，使用默认配置: %s", e)
            self._config = EngineConfig()

        return self._config

    def save_config(self) -> bool:
        """
        保存配置

        Returns:
            bool: 保存是否成功
        """
        if self._config is None:
            return False
        try:
            with open(self.config_file, 'w', encoding='utf-8') as f:
                json.dump(asdict(self._config), f, ensure_ascii=False, indent=2)
            return True
        except OSError as e:
            logger.warning("保存引擎配置失败: %s", e)
            return False

    def _update(self, section: Any, kwargs: Dict[str, Any]) -> bool:
        for key, value in kwargs.items():
            if not hasattr(section, key):
                logger.warning("忽略未知配置项: %s", key)
                continue
            setattr(section, key, value)
        return self.save_config()

    def update_limits(self, **kwargs) -> bool:
        """更新规模限制"""
        return self._update(self.load_config().limits, kwargs)

    def update_tolerances(self, **kwargs) -> bool:
        """更新数值容差"""
        return self._update(self.load_config().tolerances, kwargs)

    def get_limit(self, name: str) -> int:
        return getattr(self.load_config().limits, name)

    def get_tolerance(self, name: str) -> float:
        return getattr(self.load_config().tolerances, name)

    def reset_to_defaults(self) -> bool:
        self._config = EngineConfig()
        return self.save_config()

    def get_config_dict(self) -> Dict[str, Any]:
        return asdict(self.load_config())


# 全局配置管理器实例
_config_manager = EngineConfigManager()


def set_config_file(path: str) -> None:
    """切换全局配置文件（命令行 --engine-config），文件不存在时写出默认配置"""
    global _config_manager
    _config_manager = EngineConfigManager(path, create_missing=True)


def ensure_config_file() -> None:
    """命令行入口调用：当前配置文件不存在时写出默认配置，库内加载不写文件"""
    _config_manager.create_missing = True
    if not os.path.exists(_config_manager.config_file):
        _config_manager.load_config()
        _config_manager.save_config()


def get_engine_config() -> EngineConfig:
    """获取引擎配置"""
    return _config_manager.load_config()


def get_limit(name: str) -> int:
    """获取规模限制"""
    return _config_manager.get_limit(name)


def get_tolerance(name: str) -> float:
    """获取数值容差"""
    return _config_manager.get_tolerance(name)


def get_cache_dir() -> Optional[str]:
    """JACKKIT_CACHE_DIR 未设置时不使用磁盘缓存"""
    return os.environ.get(CACHE_ENV) or None
