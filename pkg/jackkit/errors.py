#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义与结果字典
库代码抛出异常，恒等式套件与命令行把异常转换为统一的结果字典
"""

from typing import Dict, Any, Optional


class JackkitError(ValueError):
    """所有 jackkit 异常的基类"""


class InvalidPartitionError(JackkitError):
    """分拆或标号（signature）不满足单调性、长度等约束"""


class InterlacingError(JackkitError):
    """μ 与 λ 不交错（μ ⊀ λ）"""


class CellOutsideDiagramError(JackkitError):
    """格子不在 Young 图内"""


class TorusPointError(JackkitError):
    """求值点偏离单位圆超过容差"""


class SingularSystemError(JackkitError):
    """插值线性方程组奇异或不是方阵"""


class InconsistencyError(JackkitError):
    """两种独立算法给出不同结果"""


class DeskScaleError(JackkitError):
    """参数超过桌面规模限制"""


class InvalidParametersError(JackkitError):
    """VK 参数或 θ 不合法"""


class SequenceConventionError(JackkitError):
    """序列第 n 项的长度不等于 n"""


class NonIntegerPointError(JackkitError):
    """乘积公式只对整数点成立"""


class ParseError(JackkitError):
    """无法解析的分拆或有理数字符串"""


def success_response(message: str = "ok", **data: Any) -> Dict[str, Any]:
    """
    构造成功结果

    Args:
        message: 描述信息
        **data: 附加字段

    Returns:
        Dict: {"success": True, "message": ..., "counterexample": None, ...}
    """
    result = {"success": True, "message": message, "counterexample": None}
    result.update(data)
    return result


def error_response(message: str, counterexample: Optional[Any] = None, **data: Any) -> Dict[str, Any]:
    """
    构造失败结果

    Args:
        message: 错误信息
        counterexample: 第一个反例（可 JSON 序列化）
        **data: 附加字段

    Returns:
        Dict: {"success": False, "message": ..., "counterexample": ...}
    """
    result = {"success": False, "message": message, "counterexample": counterexample}
    result.update(data)
    return result
