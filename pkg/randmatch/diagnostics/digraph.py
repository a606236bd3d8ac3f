# coding=utf-8
"""
交错有向图

由匹配 M 构造有向图：非匹配边按截断规则保留每个顶点最便宜的 k 条，
作为前向弧（权重 w）；匹配边作为后向弧（权重 −w）。
有向路径在前向弧与匹配弧之间交替，因此对应 M-交错路径。

节点编号：
    二部图  A 侧顶点 a -> a，B 侧顶点 b -> n_left + b
    一般图  顶点 v -> v
"""

import heapq
import math
from dataclasses import dataclass
from typing import Any, Dict, List, NamedTuple, Optional, Tuple, Union

from randmatch.graph.rng import PURPOSE_ORIENT, RngStream
from randmatch.graph.types import BipartiteWeightedGraph, WeightedGraph
from randmatch.solver.matching import Matching
from randmatch.utils.errors import InvalidParameterError
from randmatch.utils.validators import validate_count

DEFAULT_K_BIPARTITE = 40
DEFAULT_K_GENERAL = 20
DEFAULT_PAIR_SAMPLES = 100

Graph = Union[BipartiteWeightedGraph, WeightedGraph]


def hop_bound(n: int, bipartite: bool = True) -> int:
    """
    跳数上界 k0：二部图 ⌈3·log_4 n⌉，一般图 ⌈3·log_3 n⌉

    Examples:
        >>> hop_bound(300)
        13
        >>> hop_bound(64)
        9
    """
    n = validate_count(n, "n", minimum=1)
    if n == 1:
        return 1
    base = 4.0 if bipartite else 3.0
    value = 3.0 * math.log(n) / math.log(base)
    # 抵消 log 的舍入，避免整数幂处多进一
    return max(1, math.ceil(value - 1e-9))


@dataclass(frozen=True)
class DiagnosticsConfig:
    """诊断参数"""

    k: int = DEFAULT_K_BIPARTITE                # 出度截断
    k0: int = 1                                 # 跳数上界
    pair_samples: int = DEFAULT_PAIR_SAMPLES    # 抽样的 (a, b) 对数

    def __post_init__(self):
        validate_count(self.k, "k", minimum=1)
        validate_count(self.k0, "k0", minimum=0)
        validate_count(self.pair_samples, "pair_samples", minimum=1)

    @classmethod
    def for_graph(
        cls,
        n: int,
        bipartite: bool = True,
        k: Optional[int] = None,
        pair_samples: int = DEFAULT_PAIR_SAMPLES,
    ) -> "DiagnosticsConfig":
        """按顶点数计算 k0，k 缺省时取模型默认值"""
        if k is None:
            k = DEFAULT_K_BIPARTITE if bipartite else DEFAULT_K_GENERAL
        return cls(k=k, k0=hop_bound(n, bipartite), pair_samples=pair_samples)

    def to_dict(self) -> Dict[str, Any]:
        return {"k": self.k, "k0": self.k0, "pair_samples": self.pair_samples}


class Arc(NamedTuple):
    """有向弧"""

    tail: int
    head: int
    weight: float
    is_matching: bool
    edge: int           # 原图边编号


@dataclass(frozen=True)
class AlternatingDigraph:
    """
    交错有向图（构造后不可变）

    sources / targets 为图中的顶点编号（不是节点编号），
    free_targets 为未被匹配覆盖的 targets。
    """

    bipartite: bool
    n_left: int                                 # 一般图为 0
    node_count: int
    arcs: Tuple[Arc, ...]
    out_arcs: Tuple[Tuple[int, ...], ...]       # 节点 -> 出弧下标
    sources: Tuple[int, ...]
    targets: Tuple[int, ...]
    free_targets: Tuple[int, ...]
    orientation_stream_id: Optional[int] = None     # 一般图随机定向所用的流

    def source_node(self, a: int) -> int:
        return a

    def target_node(self, b: int) -> int:
        return self.n_left + b if self.bipartite else b

    @property
    def forward_count(self) -> int:
        return sum(1 for arc in self.arcs if not arc.is_matching)

    @property
    def backward_count(self) -> int:
        return sum(1 for arc in self.arcs if arc.is_matching)

    def out_degree(self, node: int, matching: bool = False) -> int:
        """节点的前向（或匹配）出弧数"""
        return sum(1 for i in self.out_arcs[node] if self.arcs[i].is_matching == matching)

    def to_dict(self) -> Dict[str, Any]:
        """摘要（不含弧表）"""
        return {
            "bipartite": self.bipartite,
            "nodes": self.node_count,
            "forward_arcs": self.forward_count,
            "backward_arcs": self.backward_count,
            "sources": len(self.sources),
            "targets": len(self.targets),
            "free_targets": len(self.free_targets),
            "orientation_stream_id": self.orientation_stream_id,
        }


def _check_matching(g: Graph, matching: Matching) -> None:
    for (u, v), idx in zip(matching.pairs, matching.edge_indices):
        if not (0 <= idx < len(g.edges)) or tuple(g.edges[idx][:2]) != (u, v):
            raise InvalidParameterError(f"匹配边 ({u}, {v}) 与图中第 {idx} 条边不一致")


def _cheapest(edges, candidates: List[int], k: int) -> List[int]:
    return heapq.nsmallest(k, candidates, key=lambda e: (edges[e].w, e))


def _freeze(node_count: int, arcs: List[Arc]) -> Tuple[Tuple[Arc, ...], Tuple[Tuple[int, ...], ...]]:
    out: List[List[int]] = [[] for _ in range(node_count)]
    for i, arc in enumerate(arcs):
        out[arc.tail].append(i)
    return tuple(arcs), tuple(tuple(x) for x in out)


def _build_bipartite(g: BipartiteWeightedGraph, matching: Matching, k: int) -> AlternatingDigraph:
    edges = g.edges
    n_left = g.n_left
    matched = set(matching.edge_indices)

    # V_r = A_{r+1} ∪ 已匹配的 A 侧顶点
    active = set(range(min(len(matching) + 1, n_left))) | set(matching.left_vertices)
    is_active = [a in active for a in range(n_left)]

    forward = set()
    for a in sorted(active):
        cand = [e for e in g.adjacency_left[a] if e not in matched]
        forward.update(_cheapest(edges, cand, k))
    for b in range(g.n_right):
        cand = [e for e in g.adjacency_right[b] if e not in matched and is_active[edges[e].u]]
        forward.update(_cheapest(edges, cand, k))

    arcs = [Arc(edges[e].u, n_left + edges[e].v, edges[e].w, False, e) for e in sorted(forward)]
    arcs.extend(Arc(n_left + edges[e].v, edges[e].u, -edges[e].w, True, e) for e in sorted(matched))

    node_count = n_left + g.n_right
    frozen_arcs, out_arcs = _freeze(node_count, arcs)
    covered = set(matching.right_vertices)
    return AlternatingDigraph(
        bipartite=True,
        n_left=n_left,
        node_count=node_count,
        arcs=frozen_arcs,
        out_arcs=out_arcs,
        sources=tuple(sorted(active)),
        targets=tuple(range(g.n_right)),
        free_targets=tuple(b for b in range(g.n_right) if b not in covered),
    )


def _build_general(g: WeightedGraph, matching: Matching, k: int, rng: RngStream) -> AlternatingDigraph:
    edges = g.edges
    matched = set(matching.edge_indices)
    # 每条边都抽一次定向，定向与匹配无关
    flips = rng.uniform(len(edges)) < 0.5 if edges else []

    out_candidates: List[List[int]] = [[] for _ in range(g.n)]
    heads: Dict[int, int] = {}
    for idx, (u, v, _) in enumerate(edges):
        if idx in matched:
            continue
        tail, head = (v, u) if flips[idx] else (u, v)
        out_candidates[tail].append(idx)
        heads[idx] = head

    arcs: List[Arc] = []
    for tail in range(g.n):
        for e in sorted(_cheapest(edges, out_candidates[tail], k)):
            arcs.append(Arc(tail, heads[e], edges[e].w, False, e))
    for e in sorted(matched):
        u, v, w = edges[e]
        arcs.append(Arc(u, v, -w, True, e))
        arcs.append(Arc(v, u, -w, True, e))

    frozen_arcs, out_arcs = _freeze(g.n, arcs)
    covered = set(u for pair in matching.pairs for u in pair)
    return AlternatingDigraph(
        bipartite=False,
        n_left=0,
        node_count=g.n,
        arcs=frozen_arcs,
        out_arcs=out_arcs,
        sources=tuple(range(g.n)),
        targets=tuple(range(g.n)),
        free_targets=tuple(v for v in range(g.n) if v not in covered),
        orientation_stream_id=rng.stream_id,
    )


def build_alternating_digraph(
    g: Graph,
    matching: Matching,
    cfg: DiagnosticsConfig,
    rng: Optional[RngStream] = None,
) -> AlternatingDigraph:
    """
    构造交错有向图

    二部图：活跃 A 侧顶点为 A_{r+1} ∪ 已匹配顶点；前向弧取每个活跃 a 最便宜的 k 条
    非匹配边与每个 b 连向活跃集合的最便宜 k 条非匹配边之并。
    一般图：非匹配边随机定向后每个顶点保留最便宜的 k 条出弧，匹配边加入两个方向。

    Args:
        g: 图
        matching: g 中的匹配
        cfg: 诊断参数
        rng: 一般图的定向随机流，缺省为种子 0 的 orient 流

    Raises:
        InvalidParameterError: 匹配边不属于 g
    """
    _check_matching(g, matching)
    if g.is_bipartite:
        return _build_bipartite(g, matching, cfg.k)
    if rng is None:
        rng = RngStream.for_purpose(0, PURPOSE_ORIENT)
    return _build_general(g, matching, cfg.k, rng)


def sample_pairs(d: AlternatingDigraph, count: int, rng: RngStream) -> List[Tuple[int, int]]:
    """
    均匀抽取 (a, b) 顶点对

    二部图 a 取自活跃 A 侧顶点、b 取自 B；一般图 a ≠ b。

    Raises:
        InvalidParameterError: count < 1 或图中没有可用顶点对
    """
    count = validate_count(count, "count", minimum=1)
    sources, targets = d.sources, d.targets
    if not sources or not targets or (not d.bipartite and len(targets) < 2):
        raise InvalidParameterError("交错有向图中没有可抽样的顶点对")

    ia = rng.integers(0, len(sources), size=count).tolist()
    if d.bipartite:
        ib = rng.integers(0, len(targets), size=count).tolist()
        return [(sources[i], targets[j]) for i, j in zip(ia, ib)]
    # 一般图：在 n−1 个其它顶点中抽取后跳过 a
    ib = rng.integers(0, len(targets) - 1, size=count).tolist()
    pairs = []
    for i, j in zip(ia, ib):
        a = sources[i]
        b = targets[j]
        if b >= a:
            b = targets[j + 1]
        pairs.append((a, b))
    return pairs
