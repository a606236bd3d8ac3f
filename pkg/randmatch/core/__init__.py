# coding=utf-8
"""
核心模块 - 配置加载
"""

from randmatch.core.loader import DEFAULT_CONFIG_PATH, load_config

__all__ = ["DEFAULT_CONFIG_PATH", "load_config"]
