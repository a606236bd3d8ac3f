# coding=utf-8
"""
交错路径度量

- ab_diameter: 无权 ab-直径（BFS 跳数）
- min_alternating_cost: 带负权弧的最短交错路径（标号修正法 + 入队计数判负环）
- max_matching_edge_cost: 匹配中最重的边
- augmenting_cost_check: 交错有向图路径代价与求解器增量的交叉校验

搜索在状态 (节点, 上一条弧是否为匹配弧) 上进行，前向弧与匹配弧严格交替。
起点视为刚走过匹配弧，终点只接受经前向弧到达，因此路径弧数恒为奇数。
"""

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from randmatch.diagnostics.digraph import (
    AlternatingDigraph,
    DiagnosticsConfig,
    build_alternating_digraph,
    sample_pairs,
)
from randmatch.graph.rng import PURPOSE_ORIENT, PURPOSE_PAIRS, RngStream
from randmatch.graph.types import BipartiteWeightedGraph
from randmatch.solver.bipartite import solve_sequence
from randmatch.solver.matching import Matching
from randmatch.utils.errors import InvalidParameterError, OptimalityViolationError
from randmatch.utils.validators import validate_count

# 标号修正的相对改进阈值
RELAX_TOLERANCE = 1e-12
CHECK_TOLERANCE = 1e-9


def _state(node: int, after_matching: bool) -> int:
    return 2 * node + (1 if after_matching else 0)


@dataclass
class DiameterReport:
    """ab-直径探测结果"""

    pairs: List[Tuple[int, int]] = field(default_factory=list)
    hops: List[Optional[int]] = field(default_factory=list)             # 每对的跳数，不可达为 None
    hops_to_free: List[Optional[int]] = field(default_factory=list)     # a 到最近未匹配 b 的跳数
    max_hops: Optional[int] = None
    max_hops_to_free: Optional[int] = None
    unreachable: int = 0
    unreachable_free: int = 0
    bound: Optional[int] = None                                         # k0

    @property
    def within_bound(self) -> Optional[bool]:
        """全部可达且 max_hops ≤ k0；未设 bound 时为 None"""
        if self.bound is None:
            return None
        return self.unreachable == 0 and self.max_hops is not None and self.max_hops <= self.bound

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "pairs": len(self.pairs),
            "max_hops": self.max_hops,
            "unreachable": self.unreachable,
            "max_hops_to_free": self.max_hops_to_free,
            "unreachable_free": self.unreachable_free,
            "bound": self.bound,
            "within_bound": self.within_bound,
        }


def hop_distances(d: AlternatingDigraph, a: int) -> List[Optional[int]]:
    """
    从 a 出发的交错 BFS，返回每个节点经前向弧到达的最少跳数（不可达为 None）
    """
    start = _state(d.source_node(a), True)
    depth: Dict[int, int] = {start: 0}
    queue = deque([start])
    reached: List[Optional[int]] = [None] * d.node_count

    while queue:
        s = queue.popleft()
        node, after_matching = divmod(s, 2)
        for i in d.out_arcs[node]:
            arc = d.arcs[i]
            # 刚走过匹配弧（或在起点）只能走前向弧，反之只能走匹配弧
            if arc.is_matching == bool(after_matching):
                continue
            t = _state(arc.head, arc.is_matching)
            if t in depth:
                continue
            depth[t] = depth[s] + 1
            if not arc.is_matching and reached[arc.head] is None:
                reached[arc.head] = depth[t]
            queue.append(t)
    return reached


def ab_diameter(
    d: AlternatingDigraph,
    pairs: Sequence[Tuple[int, int]],
    bound: Optional[int] = None,
) -> DiameterReport:
    """
    计算抽样顶点对的无权 ab-直径

    同时报告 a 到最近未匹配 b 的跳数，两种终点约定的结果都保留。

    Args:
        d: 交错有向图
        pairs: (a, b) 列表，a、b 为图中顶点编号
        bound: 跳数上界 k0，用于 within_bound

    Raises:
        InvalidParameterError: pairs 为空
    """
    if not pairs:
        raise InvalidParameterError("pairs 不能为空")

    report = DiameterReport(pairs=list(pairs), bound=bound)
    cache: Dict[int, List[Optional[int]]] = {}
    free_nodes = [d.target_node(b) for b in d.free_targets]

    for a, b in pairs:
        if a not in cache:
            cache[a] = hop_distances(d, a)
        reached = cache[a]
        report.hops.append(reached[d.target_node(b)])
        free_hops = [reached[x] for x in free_nodes if reached[x] is not None]
        report.hops_to_free.append(min(free_hops) if free_hops else None)

    found = [h for h in report.hops if h is not None]
    report.unreachable = len(report.hops) - len(found)
    report.max_hops = max(found) if found else None
    found_free = [h for h in report.hops_to_free if h is not None]
    report.unreachable_free = len(report.hops_to_free) - len(found_free)
    report.max_hops_to_free = max(found_free) if found_free else None
    return report


def alternating_distances(d: AlternatingDigraph, a: int) -> List[float]:
    """
    从 a 出发的最短交错路径代价（SPFA），返回按状态编号的距离表

    Raises:
        OptimalityViolationError: 某状态入队次数超过状态总数，即存在负交错环
    """
    num_states = 2 * d.node_count
    dist = [math.inf] * num_states
    in_queue = [False] * num_states
    times_in_queue = [0] * num_states

    start = _state(d.source_node(a), True)
    dist[start] = 0.0
    in_queue[start] = True
    times_in_queue[start] = 1
    queue = deque([start])

    while queue:
        s = queue.popleft()
        in_queue[s] = False
        node, after_matching = divmod(s, 2)
        ds = dist[s]
        for i in d.out_arcs[node]:
            arc = d.arcs[i]
            if arc.is_matching == bool(after_matching):
                continue
            t = _state(arc.head, arc.is_matching)
            nd = ds + arc.weight
            if nd < dist[t] - RELAX_TOLERANCE * (1.0 + abs(nd)):
                dist[t] = nd
                if not in_queue[t]:
                    times_in_queue[t] += 1
                    if times_in_queue[t] > num_states:
                        raise OptimalityViolationError(
                            f"从顶点 {a} 出发检测到负交错环，给定匹配不是最优匹配"
                        )
                    in_queue[t] = True
                    queue.append(t)
    return dist


def min_alternating_cost(d: AlternatingDigraph, a: int, b: int) -> float:
    """
    a 到 b 的最小交错路径代价（末弧为前向弧），不可达返回 inf

    Raises:
        OptimalityViolationError: 存在从 a 可达的负交错环

    Examples:
        >>> g = BipartiteWeightedGraph(1, 1, [(0, 0, 0.3)])
        >>> d = build_alternating_digraph(g, Matching.empty(), DiagnosticsConfig())
        >>> min_alternating_cost(d, 0, 0)
        0.3
    """
    dist = alternating_distances(d, a)
    return dist[_state(d.target_node(b), False)]


def max_matching_edge_cost(m: Matching) -> float:
    """
    匹配中的最大边权

    Raises:
        InvalidParameterError: 匹配为空
    """
    if len(m) == 0:
        raise InvalidParameterError("空匹配没有最大边权")
    return max(m.weights)


def probe_diameter(
    g,
    matching: Matching,
    cfg: DiagnosticsConfig,
    rng: RngStream,
) -> Tuple[AlternatingDigraph, DiameterReport]:
    """
    构造交错有向图并抽样探测 ab-直径

    rng 派生 orient 与 pairs 两个子流，二者互不影响。
    """
    d = build_alternating_digraph(g, matching, cfg, rng.child(PURPOSE_ORIENT))
    pairs = sample_pairs(d, cfg.pair_samples, rng.child(PURPOSE_PAIRS))
    return d, ab_diameter(d, pairs, bound=cfg.k0)


@dataclass(frozen=True)
class AugmentingCheck:
    """交错路径代价与增量的比较"""

    r: int                      # 已匹配步数
    increment: float            # C(n, r+1) − C(n, r)
    digraph_cost: float         # a_{r+1} 到未匹配 b 的最小交错代价
    consistent: bool            # digraph_cost ≥ increment − 容差

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "increment": self.increment,
            "digraph_cost": self.digraph_cost,
            "consistent": self.consistent,
        }


def augmenting_cost_check(
    g: BipartiteWeightedGraph,
    r: int,
    cfg: Optional[DiagnosticsConfig] = None,
    tolerance: float = CHECK_TOLERANCE,
) -> AugmentingCheck:
    """
    在最优 M_r 上比较 a_{r+1} 的最小交错增广代价与求解器增量

    截断后的有向图只会删去弧，所以路径代价不小于增量；k 不小于最大度时两者相等。

    Raises:
        InvalidParameterError: r ≥ n_left
        NoMatchingError: 求解器在 r+1 步之前失败
    """
    r = validate_count(r, "r", minimum=0, maximum=g.n_left - 1)
    if cfg is None:
        cfg = DiagnosticsConfig.for_graph(g.n_left, bipartite=True)
    seq = solve_sequence(g, r + 1, keep_matchings=True)
    m_r = seq.matchings[r - 1] if r > 0 else Matching.empty()
    increment = seq.increments[r]

    d = build_alternating_digraph(g, m_r, cfg)
    dist = alternating_distances(d, r)
    costs = [dist[_state(d.target_node(b), False)] for b in d.free_targets]
    best = min(costs) if costs else math.inf
    return AugmentingCheck(
        r=r,
        increment=increment,
        digraph_cost=best,
        consistent=best >= increment - tolerance * (1.0 + abs(increment)),
    )
