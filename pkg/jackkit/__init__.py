#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
jackkit：Jack 与移位 Jack 多项式的精确计算，以及沿 Vershik–Kerov 序列的渐近实验
"""

from jackkit.errors import JackkitError
from jackkit.jack_engine import JackEngine
from jackkit.shifted_jack import ShiftedJackEngine
from jackkit.symfun import SymFun
from jackkit.vk import VkParams, VkSequence

__version__ = "1.0.0"

__all__ = [
    "JackEngine",
    "JackkitError",
    "ShiftedJackEngine",
    "SymFun",
    "VkParams",
    "VkSequence",
    "__version__",
]
