# coding=utf-8
"""
配置加载模块

负责从 YAML 配置文件和环境变量加载配置。
优先级：内置默认值 < 配置文件 < 环境变量 < 命令行参数（命令行由 AppContext.with_overrides 处理）。
"""

import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from randmatch.utils.errors import ConfigurationError
from randmatch.utils.time import DEFAULT_TIMEZONE

DEFAULT_CONFIG_PATH = "config/config.yaml"


def _get_env_bool(key: str) -> Optional[bool]:
    """从环境变量获取布尔值，如果未设置返回 None"""
    value = os.environ.get(key, "").strip().lower()
    if not value:
        return None
    return value in ("true", "1", "yes")


def _get_env_int_or_none(key: str) -> Optional[int]:
    """从环境变量获取整数值，未设置或无法解析时返回 None"""
    value = os.environ.get(key, "").strip()
    if not value:
        return None
    try:
        return int(value)
    except ValueError:
        print(f"[警告] 环境变量 {key}={value!r} 不是整数，已忽略", file=sys.stderr)
        return None


def _get_env_str(key: str, default: str = "") -> str:
    """从环境变量获取字符串值"""
    return os.environ.get(key, "").strip() or default


def _section(config_data: Dict, name: str) -> Dict:
    section = config_data.get(name) or {}
    if not isinstance(section, dict):
        raise ConfigurationError(f"配置节 '{name}' 必须是映射", suggestion=f"示例: {name}: {{...}}")
    return section


def _load_app_config(config_data: Dict) -> Dict:
    """加载应用配置"""
    app_config = _section(config_data, "app")
    debug_env = _get_env_bool("DEBUG")
    return {
        "TIMEZONE": _get_env_str("TIMEZONE") or app_config.get("timezone", DEFAULT_TIMEZONE),
        "DEBUG": debug_env if debug_env is not None else bool(app_config.get("debug", False)),
    }


def _load_run_config(config_data: Dict) -> Dict:
    """加载运行配置（种子、并行度、输出）"""
    run = _section(config_data, "run")
    seed_env = _get_env_int_or_none("RANDMATCH_SEED")
    workers_env = _get_env_int_or_none("RANDMATCH_WORKERS")
    return {
        "SEED": seed_env if seed_env is not None else run.get("seed", 0),
        "WORKERS": workers_env if workers_env is not None else run.get("workers", 1),
        "OUTPUT_DIR": _get_env_str("RANDMATCH_OUTPUT_DIR") or run.get("output_dir", "output"),
        "FORMAT": run.get("format", "jsonl"),
        "CHUNK_SIZE": run.get("chunk_size"),
    }


def _load_experiment_config(config_data: Dict) -> Dict:
    """
    加载实验参数默认值

    未在配置文件中出现的键为 None，此时沿用实验目录中的预设值。
    """
    experiment = _section(config_data, "experiment")
    return {
        "LAMBDA": experiment.get("lambda"),
        "MU_CONSTANT": experiment.get("mu_constant"),
        "THRESHOLD_CONSTANT": experiment.get("threshold_constant"),
        "EPSILONS": experiment.get("epsilons"),
    }


def _load_diagnostics_config(config_data: Dict) -> Dict:
    """加载诊断配置"""
    diagnostics = _section(config_data, "diagnostics")
    return {
        "K": diagnostics.get("k"),
        "PAIR_SAMPLES": diagnostics.get("pair_samples", 100),
    }


def load_config(config_path: Optional[str] = None, quiet: bool = False) -> Dict[str, Any]:
    """
    加载配置文件

    Args:
        config_path: 配置文件路径，默认从环境变量 RANDMATCH_CONFIG 获取或使用 config/config.yaml
        quiet: 不输出加载信息

    Returns:
        包含所有配置的字典

    Raises:
        ConfigurationError: 显式指定的配置文件不存在或无法解析
    """
    explicit = config_path or _get_env_str("RANDMATCH_CONFIG") or None
    path = Path(explicit or DEFAULT_CONFIG_PATH)

    config_data: Dict[str, Any] = {}
    if path.exists():
        try:
            with open(path, "r", encoding="utf-8") as f:
                config_data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigurationError(f"配置文件 {path} 解析失败: {e}")
        if not isinstance(config_data, dict):
            raise ConfigurationError(f"配置文件 {path} 顶层必须是映射")
        if not quiet:
            print(f"[配置] 配置文件加载成功: {path}", file=sys.stderr)
    elif explicit:
        raise ConfigurationError(f"配置文件 {path} 不存在", suggestion="请检查 --config 或 RANDMATCH_CONFIG")
    elif not quiet:
        print(f"[配置] 未找到 {path}，使用内置默认值", file=sys.stderr)

    # 合并所有配置
    config: Dict[str, Any] = {"CONFIG_PATH": str(path) if path.exists() else None}

    # 应用配置
    config.update(_load_app_config(config_data))

    # 运行配置
    config["RUN"] = _load_run_config(config_data)

    # 实验参数
    config["EXPERIMENT"] = _load_experiment_config(config_data)

    # 诊断配置
    config["DIAGNOSTICS"] = _load_diagnostics_config(config_data)

    return config
