# coding=utf-8
"""
参数验证工具

提供统一的参数验证功能。
支持配置文件和命令行将数值写成字符串的情况。
"""

import json
import math
from typing import List, Optional, Union

from .errors import InvalidParameterError


# ==================== 辅助函数：配置/命令行中的字符串数值 ====================

def _parse_string_to_int(value: str, param_name: str = "参数") -> int:
    """
    将字符串解析为整数

    Args:
        value: 字符串值
        param_name: 参数名（用于错误消息）

    Returns:
        解析后的整数

    Raises:
        InvalidParameterError: 解析失败
    """
    value = value.strip()

    try:
        return int(value)
    except ValueError:
        pass

    # 允许 "1e4" 这类写法，但必须是整数值
    try:
        as_float = float(value)
    except ValueError:
        raise InvalidParameterError(
            f"{param_name} 必须是整数，无法解析: {value}",
            suggestion="请提供有效的整数值，如: 10, 400, 20000"
        )
    if not as_float.is_integer():
        raise InvalidParameterError(
            f"{param_name} 必须是整数: {value}",
            suggestion="请提供有效的整数值，如: 10, 400, 20000"
        )
    return int(as_float)


def _parse_string_to_float(value: str, param_name: str = "参数") -> float:
    """字符串转浮点数，失败抛 InvalidParameterError"""
    try:
        return float(value.strip())
    except ValueError:
        raise InvalidParameterError(
            f"{param_name} 必须是数字，无法解析: {value}",
            suggestion="请提供有效的数字值，如: 0.25, 0.01"
        )


def parse_float_list(value: Union[str, List[float], None], param_name: str = "参数") -> List[float]:
    """
    解析浮点数列表

    支持格式：
    - JSON 数组: '[0.1, 0.3]'
    - 逗号分隔: "0.1,0.3"
    - 已是列表: [0.1, 0.3]

    Raises:
        InvalidParameterError: 解析失败
    """
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        return [float(v) for v in value]

    text = str(value).strip()
    if not text:
        return []

    try:
        parsed = json.loads(text)
        if isinstance(parsed, list):
            return [float(v) for v in parsed]
        if isinstance(parsed, (int, float)):
            return [float(parsed)]
    except (json.JSONDecodeError, TypeError, ValueError):
        pass

    return [_parse_string_to_float(item, param_name) for item in text.split(",") if item.strip()]


# ==================== 数值参数验证 ====================

def validate_probability(p: Union[float, str], param_name: str = "p") -> float:
    """
    验证边概率 p ∈ (0, 1]

    Raises:
        InvalidParameterError: 超出范围
    """
    if isinstance(p, str):
        p = _parse_string_to_float(p, param_name)
    p = float(p)
    if not (0.0 < p <= 1.0) or math.isnan(p):
        raise InvalidParameterError(
            f"{param_name} 必须在 (0, 1] 区间内，当前值: {p}",
            suggestion="边概率示例: 0.25, 0.5, 1"
        )
    return p


def validate_positive(value: Union[float, str], param_name: str = "参数") -> float:
    """验证正实数（有限且 > 0）"""
    if isinstance(value, str):
        value = _parse_string_to_float(value, param_name)
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise InvalidParameterError(
            f"{param_name} 必须是有限正数，当前值: {value}",
            suggestion=f"请为 {param_name} 提供大于 0 的数值"
        )
    return value


def validate_nonnegative(value: Union[float, str], param_name: str = "参数") -> float:
    """验证非负实数"""
    if isinstance(value, str):
        value = _parse_string_to_float(value, param_name)
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise InvalidParameterError(
            f"{param_name} 必须是有限非负数，当前值: {value}",
            suggestion=f"请为 {param_name} 提供不小于 0 的数值"
        )
    return value


def validate_count(
    value: Union[int, str],
    param_name: str = "参数",
    minimum: int = 0,
    maximum: Optional[int] = None,
) -> int:
    """
    验证计数参数

    Args:
        value: 整数或字符串
        param_name: 参数名
        minimum: 最小允许值（含）
        maximum: 最大允许值（含），None 表示不限

    Returns:
        验证后的整数

    Raises:
        InvalidParameterError: 参数无效
    """
    if isinstance(value, str):
        value = _parse_string_to_int(value, param_name)
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        else:
            raise InvalidParameterError(f"{param_name} 必须是整数类型，当前值: {value!r}")

    if value < minimum:
        raise InvalidParameterError(
            f"{param_name} 不能小于 {minimum}，当前值: {value}"
        )
    if maximum is not None and value > maximum:
        raise InvalidParameterError(
            f"{param_name} 不能大于 {maximum}，当前值: {value}"
        )
    return value


def validate_seed(seed: Union[int, str], param_name: str = "seed") -> int:
    """验证 64 位无符号种子"""
    return validate_count(seed, param_name, minimum=0, maximum=2 ** 64 - 1)
