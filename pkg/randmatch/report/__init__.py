# coding=utf-8
"""
报告模块 - 绘图数据表
"""

from randmatch.report.plotdata import (
    PLOT_KINDS,
    PlotTable,
    load_result_document,
    build_plot_table,
    plot_table_from_files,
)

__all__ = [
    "PLOT_KINDS",
    "PlotTable",
    "load_result_document",
    "build_plot_table",
    "plot_table_from_files",
]
