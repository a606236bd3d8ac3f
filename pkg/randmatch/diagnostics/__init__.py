# coding=utf-8
"""
诊断模块

交错有向图的构造与 ab-直径、负权最短交错路径、匹配最大边权等结构探测。
"""

from randmatch.diagnostics.digraph import (
    DEFAULT_K_BIPARTITE,
    DEFAULT_K_GENERAL,
    DEFAULT_PAIR_SAMPLES,
    hop_bound,
    DiagnosticsConfig,
    Arc,
    AlternatingDigraph,
    build_alternating_digraph,
    sample_pairs,
)
from randmatch.diagnostics.paths import (
    DiameterReport,
    AugmentingCheck,
    hop_distances,
    ab_diameter,
    alternating_distances,
    min_alternating_cost,
    max_matching_edge_cost,
    probe_diameter,
    augmenting_cost_check,
)

__all__ = [
    "DEFAULT_K_BIPARTITE",
    "DEFAULT_K_GENERAL",
    "DEFAULT_PAIR_SAMPLES",
    "hop_bound",
    "DiagnosticsConfig",
    "Arc",
    "AlternatingDigraph",
    "build_alternating_digraph",
    "sample_pairs",
    "DiameterReport",
    "AugmentingCheck",
    "hop_distances",
    "ab_diameter",
    "alternating_distances",
    "min_alternating_cost",
    "max_matching_edge_cost",
    "probe_diameter",
    "augmenting_cost_check",
]
