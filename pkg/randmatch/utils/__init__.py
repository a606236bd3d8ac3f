# coding=utf-8
"""
工具模块 - 公共工具函数与异常
"""

from randmatch.utils.time import (
    DEFAULT_TIMEZONE,
    get_configured_time,
    format_timestamp,
)
from randmatch.utils.errors import (
    RandMatchError,
    InvalidParameterError,
    UnknownExperimentError,
    ConfigurationError,
    SizeGuardError,
    OddVertexCountError,
    GraphParseError,
    SchemaMismatchError,
    NoMatchingError,
    NoPerfectMatchingError,
    NumericError,
    OptimalityViolationError,
)

__all__ = [
    "DEFAULT_TIMEZONE",
    "get_configured_time",
    "format_timestamp",
    "RandMatchError",
    "InvalidParameterError",
    "UnknownExperimentError",
    "ConfigurationError",
    "SizeGuardError",
    "OddVertexCountError",
    "GraphParseError",
    "SchemaMismatchError",
    "NoMatchingError",
    "NoPerfectMatchingError",
    "NumericError",
    "OptimalityViolationError",
]
