# coding=utf-8
"""
二部图增量最小代价匹配

按下标顺序依次加入 a_0, a_1, ...，每一步用带势能的 Dijkstra 找最小约化代价增广路，
一次求解即可得到全部 C(n, r)。

对偶变量约定（r 步之后）：
    y_a + y_b ≤ w(a, b)        对所有 a ∈ A_r 的边
    y_a + y_b = w(a, b)        对匹配边
    y_b ≤ 0，未匹配的 b 有 y_b = 0
因此 Σ y_a + Σ y_b = C(n, r)，增量 C(n, r) − C(n, r−1) 恰为新顶点的最短路长度。
"""

import heapq
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from randmatch.graph.types import BipartiteWeightedGraph
from randmatch.solver.matching import Matching
from randmatch.utils.errors import InvalidParameterError, NoMatchingError, NoPerfectMatchingError
from randmatch.utils.validators import validate_count

# 证书容差（绝对）
CERTIFICATE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class DualCertificate:
    """第 r 步的对偶势能"""

    r: int                                  # 已匹配的 A 侧顶点数
    y_left: Tuple[float, ...]               # A 侧势能，下标 ≥ r 的顶点为 0
    y_right: Tuple[float, ...]              # B 侧势能

    def objective(self) -> float:
        """对偶目标值 Σ y_a + Σ y_b"""
        return math.fsum(self.y_left[: self.r]) + math.fsum(self.y_right)


@dataclass
class MatchingSequence:
    """增量匹配序列 M_1 .. M_{r_max}"""

    r_max: int                                          # 步数
    costs: List[float] = field(default_factory=list)    # costs[r-1] = C(n, r)
    increments: List[float] = field(default_factory=list)  # increments[r-1] = C(n, r) - C(n, r-1)
    final_matching: Matching = field(default_factory=Matching.empty)
    matchings: Optional[List[Matching]] = None          # keep_matchings 时保留每步快照
    matched_right_sets: Optional[List[Tuple[int, ...]]] = None  # B_r
    certificates: Optional[List[DualCertificate]] = None

    def cost(self, r: int) -> float:
        """C(n, r)，C(n, 0) = 0"""
        if r == 0:
            return 0.0
        return self.costs[r - 1]

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "r_max": self.r_max,
            "costs": list(self.costs),
            "increments": list(self.increments),
            "final_matching": self.final_matching.to_dict(),
        }


class IncrementalAssignment:
    """
    逐个加入 A 侧顶点的最短增广路求解器

    每个实例独占工作状态，只在单线程中使用。
    """

    def __init__(self, g: BipartiteWeightedGraph):
        self.g = g
        self.n_left = g.n_left
        self.n_right = g.n_right
        edges = g.edges
        # 每个 A 侧顶点的 (v, w, 边编号)
        self.left_nbrs = [[(edges[e].v, edges[e].w, e) for e in adj] for adj in g.adjacency_left]
        self.y_left = [0.0] * self.n_left
        self.y_right = [0.0] * self.n_right
        self.mate_left = [-1] * self.n_left     # 匹配边编号
        self.mate_right = [-1] * self.n_right
        self.r = 0

    def augment_next(self) -> float:
        """
        加入 a_r 并沿最短增广路增广

        Returns:
            本步增量（等于最短路长度）

        Raises:
            NoMatchingError: 不存在增广路
        """
        s = self.r
        if s >= self.n_left:
            raise InvalidParameterError(f"A 侧只有 {self.n_left} 个顶点，无法继续增广")
        edges = self.g.edges
        y_left, y_right = self.y_left, self.y_right
        mate_left, mate_right = self.mate_left, self.mate_right

        y_left[s] = 0.0
        dist: Dict[int, float] = {}
        pred: Dict[int, Tuple[int, int]] = {}     # v -> (u, 边编号)
        done = set()
        heap: List[Tuple[float, int, int]] = []
        settled_left = [(s, 0.0)]
        settled_right: List[Tuple[int, float]] = []

        def scan(u: int, du: float) -> None:
            yu = y_left[u]
            for v, w, e in self.left_nbrs[u]:
                if v in done:
                    continue
                nd = du + (w - yu - y_right[v])
                old = dist.get(v)
                # 距离相同时取较小的边编号
                if old is None or nd < old or (nd == old and e < pred[v][1]):
                    dist[v] = nd
                    pred[v] = (u, e)
                    heapq.heappush(heap, (nd, e, v))

        scan(s, 0.0)
        sink = -1
        delta = 0.0
        while heap:
            d, e, v = heapq.heappop(heap)
            if v in done or d != dist[v] or e != pred[v][1]:
                continue
            done.add(v)
            if mate_right[v] < 0:
                sink, delta = v, d
                break
            settled_right.append((v, d))
            u2 = edges[mate_right[v]].u
            # 匹配边约化代价为 0，其 A 端点与 v 同距离
            settled_left.append((u2, d))
            scan(u2, d)

        if sink < 0:
            raise NoMatchingError(s + 1)

        for u, du in settled_left:
            y_left[u] += delta - du
        for v, dv in settled_right:
            y_right[v] -= delta - dv

        v = sink
        while True:
            u, e = pred[v]
            prev = mate_left[u]
            mate_left[u] = e
            mate_right[v] = e
            if u == s:
                break
            v = edges[prev].v

        self.r += 1
        return delta

    def current_matching(self) -> Matching:
        return Matching.from_edges(self.g, (self.mate_left[u] for u in range(self.r)))

    def certificate(self) -> DualCertificate:
        y_left = tuple(self.y_left[: self.r]) + (0.0,) * (self.n_left - self.r)
        return DualCertificate(r=self.r, y_left=y_left, y_right=tuple(self.y_right))


def solve_sequence(
    g: BipartiteWeightedGraph,
    r_max: Optional[int] = None,
    keep_matchings: bool = False,
) -> MatchingSequence:
    """
    计算 C(n, 1) .. C(n, r_max)

    Args:
        g: 二部图
        r_max: 步数，默认 n_left
        keep_matchings: 是否保留每步的匹配、B_r 与对偶证书

    Returns:
        MatchingSequence

    Raises:
        NoMatchingError: 第一个不存在增广路的 r

    Examples:
        >>> g = BipartiteWeightedGraph(2, 2, [(0, 0, 1.0), (0, 1, 2.0), (1, 0, 3.0), (1, 1, 1.0)])
        >>> solve_sequence(g).costs
        [1.0, 2.0]
    """
    if r_max is None:
        r_max = g.n_left
    r_max = validate_count(r_max, "r_max", minimum=0, maximum=g.n_left)

    solver = IncrementalAssignment(g)
    seq = MatchingSequence(r_max=r_max)
    if keep_matchings:
        seq.matchings, seq.matched_right_sets, seq.certificates = [], [], []

    mate_left = solver.mate_left
    for _ in range(r_max):
        solver.augment_next()
        cost = math.fsum(g.edges[mate_left[u]].w for u in range(solver.r))
        seq.increments.append(cost - seq.cost(solver.r - 1))
        seq.costs.append(cost)
        if keep_matchings:
            m = solver.current_matching()
            seq.matchings.append(m)
            seq.matched_right_sets.append(m.right_vertices)
            seq.certificates.append(solver.certificate())

    seq.final_matching = seq.matchings[-1] if seq.matchings else solver.current_matching()
    return seq


def solve_assignment(g: BipartiteWeightedGraph) -> Matching:
    """
    最小代价完美匹配

    Raises:
        InvalidParameterError: 两侧顶点数不等
        NoPerfectMatchingError: 不存在完美匹配
    """
    if g.n_left != g.n_right:
        raise InvalidParameterError(
            f"完美匹配要求两侧顶点数相等，当前为 {g.n_left}×{g.n_right}"
        )
    try:
        return solve_sequence(g, g.n_left).final_matching
    except NoPerfectMatchingError:
        raise
    except NoMatchingError as e:
        raise NoPerfectMatchingError(e.r) from e


def check_certificate(
    g: BipartiteWeightedGraph,
    matching: Matching,
    certificate: DualCertificate,
    tolerance: float = CERTIFICATE_TOLERANCE,
) -> List[str]:
    """
    检查对偶证书，返回违反项列表（空列表表示通过）

    检查 A_r 关联边的可行性、匹配边的紧性、B 侧势能非正以及未匹配 B 顶点势能为 0。
    """
    violations = []
    r = certificate.r
    y_left, y_right = certificate.y_left, certificate.y_right
    matched = set(matching.edge_indices)
    matched_right = set(matching.right_vertices)

    for idx, (u, v, w) in enumerate(g.edges):
        if u >= r:
            continue
        slack = w - y_left[u] - y_right[v]
        if slack < -tolerance:
            violations.append(f"边 ({u}, {v}) 不可行: 松弛量 {slack:.3e}")
        if idx in matched and abs(slack) > tolerance:
            violations.append(f"匹配边 ({u}, {v}) 不紧: 松弛量 {slack:.3e}")

    for v, yv in enumerate(y_right):
        if yv > tolerance:
            violations.append(f"B 侧顶点 {v} 势能为正: {yv:.3e}")
        if v not in matched_right and abs(yv) > tolerance:
            violations.append(f"未匹配 B 侧顶点 {v} 势能非零: {yv:.3e}")
    return violations
