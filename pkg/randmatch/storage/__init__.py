# coding=utf-8
"""
存储模块 - 实验结果的持久化

支持的格式:
- jsonl: header 记录 + 逐试验记录
- csv: 来源注释行 + 逐试验表格
- summary.json: 汇总文档
"""

from randmatch.storage.base import (
    FORMAT_JSONL,
    FORMAT_CSV,
    FORMATS,
    ProvenanceHeader,
    ResultStore,
)
from randmatch.storage.local import (
    SUMMARY_SUFFIX,
    LocalResultStore,
    provenance_comments,
    format_jsonl,
    format_csv,
)

__all__ = [
    "FORMAT_JSONL",
    "FORMAT_CSV",
    "FORMATS",
    "ProvenanceHeader",
    "ResultStore",
    "SUMMARY_SUFFIX",
    "LocalResultStore",
    "provenance_comments",
    "format_jsonl",
    "format_csv",
]
