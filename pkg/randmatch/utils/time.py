# coding=utf-8
"""
时间工具模块 - 结果文件时间戳
"""

import sys
from datetime import datetime

import pytz

# 默认时区
DEFAULT_TIMEZONE = "Asia/Shanghai"


def get_configured_time(timezone: str = DEFAULT_TIMEZONE) -> datetime:
    """
    获取配置时区的当前时间

    Args:
        timezone: 时区名称，如 'Asia/Shanghai', 'UTC'

    Returns:
        带时区信息的当前时间
    """
    try:
        tz = pytz.timezone(timezone)
    except pytz.UnknownTimeZoneError:
        print(f"[警告] 未知时区 '{timezone}'，使用默认时区 {DEFAULT_TIMEZONE}", file=sys.stderr)
        tz = pytz.timezone(DEFAULT_TIMEZONE)
    return datetime.now(tz)


def format_timestamp(timezone: str = DEFAULT_TIMEZONE) -> str:
    """
    生成 ISO 8601 时间戳（秒精度，带时区偏移）

    结果文件头部的 generated_at 字段使用此格式，复现比对时忽略该字段。

    Returns:
        如 '2025-12-09T15:30:00+08:00'
    """
    return get_configured_time(timezone).replace(microsecond=0).isoformat()
