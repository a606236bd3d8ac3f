# coding=utf-8
"""
图核心模块

提供带权图数据模型、可复现随机数流、随机图生成和图文件读写。
"""

from randmatch.graph.types import (
    COMPLETE_BIPARTITE,
    GNNP,
    COMPLETE,
    GNP,
    MODELS,
    BIPARTITE_MODELS,
    WeightedEdge,
    BipartiteWeightedGraph,
    WeightedGraph,
    ModelSpec,
    SpecialVertexConfig,
)
from randmatch.graph.rng import (
    RngStream,
    derive_stream_id,
    PURPOSE_GRAPH,
    PURPOSE_SPECIAL,
    PURPOSE_PAIRS,
    PURPOSE_ORIENT,
)
from randmatch.graph.generate import (
    exponential_from_uniform,
    sample_exponential,
    generate,
    augment_special_vertex,
)
from randmatch.graph.io import (
    parse_graph_text,
    format_graph,
    read_graph,
    write_graph,
)

__all__ = [
    "COMPLETE_BIPARTITE",
    "GNNP",
    "COMPLETE",
    "GNP",
    "MODELS",
    "BIPARTITE_MODELS",
    "WeightedEdge",
    "BipartiteWeightedGraph",
    "WeightedGraph",
    "ModelSpec",
    "SpecialVertexConfig",
    "RngStream",
    "derive_stream_id",
    "PURPOSE_GRAPH",
    "PURPOSE_SPECIAL",
    "PURPOSE_PAIRS",
    "PURPOSE_ORIENT",
    "exponential_from_uniform",
    "sample_exponential",
    "generate",
    "augment_special_vertex",
    "parse_graph_text",
    "format_graph",
    "read_graph",
    "write_graph",
]
