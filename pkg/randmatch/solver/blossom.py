# coding=utf-8
"""
一般图最小代价完美匹配（带花收缩的原始-对偶算法）

把最小代价完美匹配化为变换权重 w' = K − w（K = max w + 1）下的
最大基数-最大权匹配求解；所有完美匹配边数相同，因此两者最优解一致。

对偶证书换回原权重后的形式：
    y_i = K/2 − u_i，    z'_B = −z_B ≤ 0
    y_i + y_j + Σ_{B ∋ i, j} z'_B ≤ w(i, j)，匹配边取等号
其中 u_i、z_B 为最大权问题的顶点/花对偶变量。

平局规则：代价相同的最优解中取边编号升序元组字典序最小的一个。
第一次求解得到对偶证书后，只在紧边子图上用整数键 (精确权重, 边编号奖励) 再求解一次。
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from randmatch.graph.types import WeightedGraph
from randmatch.solver.matching import Matching
from randmatch.utils.errors import NoPerfectMatchingError, OddVertexCountError

# 证书容差（绝对）
CERTIFICATE_TOLERANCE = 1e-9

# 顶点/花的标签
_OUTER = 1
_INNER = 2
_VISITED = 4


@dataclass(frozen=True)
class BlossomState:
    """求解结束时的对偶证书"""

    vertex_duals: Tuple[float, ...]                         # y_i
    blossoms: Tuple[Tuple[FrozenSet[int], float], ...]      # (花的顶点集, z'_B ≤ 0)
    matching: Matching                                      # 求得的完美匹配


class _Blossom:
    """收缩后的奇环"""

    __slots__ = ["children", "links", "outer_edges"]

    def __init__(self):
        self.children: list = []        # 子花，从基开始沿环排列
        self.links: list = []           # links[i] 连接 children[i] 与 children[i+1]
        self.outer_edges: Optional[list] = None

    def vertices(self):
        stack = [*self.children]
        while stack:
            t = stack.pop()
            if isinstance(t, _Blossom):
                stack.extend(t.children)
            else:
                yield t


class _MatchingEngine:
    """
    最大基数-最大权匹配的原始-对偶求解器，O(n^3)

    顶点对偶 dual2 存放 2·u，松弛量同样乘以 2。integral=True 时全部使用整数运算。
    """

    def __init__(self, n: int, weighted_edges: Sequence[Tuple[int, int, float]], integral: bool = False):
        self.n = n
        self.integral = integral
        self.zero = 0 if integral else CERTIFICATE_TOLERANCE
        self.neighbors: List[List[int]] = [[] for _ in range(n)]
        self.weight: List[Dict[int, float]] = [{} for _ in range(n)]
        heaviest = 0
        for i, j, w in weighted_edges:
            self.neighbors[i].append(j)
            self.neighbors[j].append(i)
            self.weight[i][j] = w
            self.weight[j][i] = w
            heaviest = max(heaviest, w)

        self.mate: Dict[int, int] = {}
        self.tag: dict = {}
        self.tag_edge: dict = {}
        self.top: list = list(range(n))
        self.parent: dict = {v: None for v in range(n)}
        self.base_of: dict = {v: v for v in range(n)}
        self.best_edge: dict = {}
        self.dual2: list = [heaviest] * n
        self.odd_dual: dict = {}
        self.tight: dict = {}
        self.pending: List[int] = []

    def slack(self, v: int, w: int):
        return self.dual2[v] + self.dual2[w] - 2 * self.weight[v][w]

    def _half(self, value):
        return value // 2 if self.integral else value / 2.0

    def _label(self, w: int, t: int, v: Optional[int]) -> None:
        tag, tag_edge, best_edge = self.tag, self.tag_edge, self.best_edge
        while True:
            b = self.top[w]
            tag[w] = tag[b] = t
            tag_edge[w] = tag_edge[b] = (v, w) if v is not None else None
            best_edge[w] = best_edge[b] = None
            if t == _OUTER:
                if isinstance(b, _Blossom):
                    self.pending.extend(b.vertices())
                else:
                    self.pending.append(b)
                return
            # 内花的基顶点的配偶成为外顶点
            base = self.base_of[b]
            w, t, v = self.mate[base], _OUTER, base

    def _cycle_base(self, v: int, w: int):
        """从 v、w 交替回溯，返回两条路径的交汇基顶点；两条路径不相交时返回 None（找到增广路）"""
        tag, tag_edge, top = self.tag, self.tag_edge, self.top
        trail = []
        base = None
        while v is not None:
            b = top[v]
            if tag[b] & _VISITED:
                base = self.base_of[b]
                break
            trail.append(b)
            tag[b] = _OUTER | _VISITED
            if tag_edge[b] is None:
                v = None
            else:
                v = tag_edge[b][0]
                b = top[v]
                v = tag_edge[b][0]
            if w is not None:
                v, w = w, v
        for b in trail:
            tag[b] = _OUTER
        return base

    def _shrink(self, base: int, v: int, w: int) -> None:
        tag, tag_edge, top = self.tag, self.tag_edge, self.top
        parent, best_edge = self.parent, self.best_edge
        bb = top[base]
        bv = top[v]
        bw = top[w]
        b = _Blossom()
        self.base_of[b] = base
        parent[b] = None
        parent[bb] = b
        b.children = ring = []
        b.links = links = [(v, w)]
        while bv != bb:
            parent[bv] = b
            ring.append(bv)
            links.append(tag_edge[bv])
            v = tag_edge[bv][0]
            bv = top[v]
        ring.append(bb)
        ring.reverse()
        links.reverse()
        while bw != bb:
            parent[bw] = b
            ring.append(bw)
            links.append((tag_edge[bw][1], tag_edge[bw][0]))
            w = tag_edge[bw][0]
            bw = top[w]
        tag[b] = _OUTER
        tag_edge[b] = tag_edge[bb]
        self.odd_dual[b] = 0
        for x in b.vertices():
            if tag[top[x]] == _INNER:
                self.pending.append(x)
            top[x] = b

        # 到每个相邻外花的最小松弛边
        nearest = {}
        for sub in ring:
            if isinstance(sub, _Blossom):
                if sub.outer_edges is not None:
                    candidates = sub.outer_edges
                    sub.outer_edges = None
                else:
                    candidates = [(x, y) for x in sub.vertices() for y in self.neighbors[x]]
            else:
                candidates = [(sub, y) for y in self.neighbors[sub]]
            for edge in candidates:
                i, j = edge
                if top[j] == b:
                    i, j = j, i
                bj = top[j]
                if (
                    bj != b
                    and tag.get(bj) == _OUTER
                    and (bj not in nearest or self.slack(i, j) < self.slack(*nearest[bj]))
                ):
                    nearest[bj] = edge
            best_edge[sub] = None
        b.outer_edges = list(nearest.values())
        chosen = None
        chosen_slack = 0
        for edge in b.outer_edges:
            s = self.slack(*edge)
            if chosen is None or s < chosen_slack:
                chosen, chosen_slack = edge, s
        best_edge[b] = chosen

    def _expand(self, b: _Blossom, endstage: bool) -> None:
        """展开顶层花；用生成器栈代替递归"""
        tag, tag_edge, top = self.tag, self.tag_edge, self.top
        parent, best_edge, tight = self.parent, self.best_edge, self.tight

        def _walk(b, endstage):
            for s in b.children:
                parent[s] = None
                if isinstance(s, _Blossom):
                    if endstage and self.odd_dual[s] <= self.zero:
                        yield s
                    else:
                        for x in s.vertices():
                            top[x] = s
                else:
                    top[s] = s
            if (not endstage) and tag.get(b) == _INNER:
                # 从入口子花沿偶数长度一侧重新标记到基
                entry = top[tag_edge[b][1]]
                j = b.children.index(entry)
                if j & 1:
                    j -= len(b.children)
                    step = 1
                else:
                    step = -1
                v, w = tag_edge[b]
                while j != 0:
                    if step == 1:
                        p, q = b.links[j]
                    else:
                        q, p = b.links[j - 1]
                    tag[w] = None
                    tag[q] = None
                    self._label(w, _INNER, v)
                    tight[(p, q)] = tight[(q, p)] = True
                    j += step
                    if step == 1:
                        v, w = b.links[j]
                    else:
                        w, v = b.links[j - 1]
                    tight[(v, w)] = tight[(w, v)] = True
                    j += step
                bw = b.children[j]
                tag[w] = tag[bw] = _INNER
                tag_edge[w] = tag_edge[bw] = (v, w)
                best_edge[bw] = None
                j += step
                while b.children[j] != entry:
                    bv = b.children[j]
                    if tag.get(bv) == _OUTER:
                        j += step
                        continue
                    if isinstance(bv, _Blossom):
                        for v in bv.vertices():
                            if tag.get(v):
                                break
                    else:
                        v = bv
                    if tag.get(v):
                        tag[v] = None
                        tag[self.mate[self.base_of[bv]]] = None
                        self._label(v, _INNER, tag_edge[v][0])
                    j += step
            tag.pop(b, None)
            tag_edge.pop(b, None)
            best_edge.pop(b, None)
            del parent[b]
            del self.base_of[b]
            del self.odd_dual[b]

        stack = [_walk(b, endstage)]
        while stack:
            for s in stack[-1]:
                stack.append(_walk(s, endstage))
                break
            else:
                stack.pop()

    def _rotate(self, b: _Blossom, v: int) -> None:
        """沿花内交错路把 v 变为花的新基"""
        parent, mate = self.parent, self.mate

        def _walk(b, v):
            t = v
            while parent[t] != b:
                t = parent[t]
            if isinstance(t, _Blossom):
                yield (t, v)
            i = j = b.children.index(t)
            if i & 1:
                j -= len(b.children)
                step = 1
            else:
                step = -1
            while j != 0:
                j += step
                t = b.children[j]
                if step == 1:
                    w, x = b.links[j]
                else:
                    x, w = b.links[j - 1]
                if isinstance(t, _Blossom):
                    yield (t, w)
                j += step
                t = b.children[j]
                if isinstance(t, _Blossom):
                    yield (t, x)
                mate[w] = x
                mate[x] = w
            b.children = b.children[i:] + b.children[:i]
            b.links = b.links[i:] + b.links[:i]
            self.base_of[b] = self.base_of[b.children[0]]

        stack = [_walk(b, v)]
        while stack:
            for args in stack[-1]:
                stack.append(_walk(*args))
                break
            else:
                stack.pop()

    def _augment(self, v: int, w: int) -> None:
        """沿经过外顶点 v、w 的增广路交换匹配边"""
        tag_edge, top, mate = self.tag_edge, self.top, self.mate
        for s, j in ((v, w), (w, v)):
            while True:
                bs = top[s]
                if isinstance(bs, _Blossom):
                    self._rotate(bs, s)
                mate[s] = j
                if tag_edge[bs] is None:
                    break
                t = tag_edge[bs][0]
                bt = top[t]
                s, j = tag_edge[bt]
                if isinstance(bt, _Blossom):
                    self._rotate(bt, j)
                mate[j] = s

    def _phase(self) -> bool:
        """执行一个阶段，返回是否完成增广"""
        tag, top, best_edge, tight = self.tag, self.top, self.best_edge, self.tight
        dual2, odd_dual, parent = self.dual2, self.odd_dual, self.parent

        tag.clear()
        self.tag_edge.clear()
        best_edge.clear()
        for b in odd_dual:
            b.outer_edges = None
        tight.clear()
        self.pending[:] = []

        for v in range(self.n):
            if v not in self.mate and tag.get(top[v]) is None:
                self._label(v, _OUTER, None)

        while True:
            while self.pending:
                v = self.pending.pop()
                for w in self.neighbors[v]:
                    bv = top[v]
                    bw = top[w]
                    if bv == bw:
                        continue
                    s = None
                    if (v, w) not in tight:
                        s = self.slack(v, w)
                        if s <= 0:
                            tight[(v, w)] = tight[(w, v)] = True
                    if (v, w) in tight:
                        if tag.get(bw) is None:
                            self._label(w, _INNER, v)
                        elif tag.get(bw) == _OUTER:
                            base = self._cycle_base(v, w)
                            if base is not None:
                                self._shrink(base, v, w)
                            else:
                                self._augment(v, w)
                                return True
                        elif tag.get(w) is None:
                            tag[w] = _INNER
                            self.tag_edge[w] = (v, w)
                    elif tag.get(bw) == _OUTER:
                        if best_edge.get(bv) is None or s < self.slack(*best_edge[bv]):
                            best_edge[bv] = (v, w)
                    elif tag.get(w) is None:
                        if best_edge.get(w) is None or s < self.slack(*best_edge[w]):
                            best_edge[w] = (v, w)

            # 无增广路：选最小的对偶步长
            kind = None
            delta = edge = target = None

            for v in range(self.n):
                if tag.get(top[v]) is None and best_edge.get(v) is not None:
                    d = self.slack(*best_edge[v])
                    if kind is None or d < delta:
                        delta, kind, edge = d, "free", best_edge[v]

            for b in parent:
                if parent[b] is None and tag.get(b) == _OUTER and best_edge.get(b) is not None:
                    d = self._half(self.slack(*best_edge[b]))
                    if kind is None or d < delta:
                        delta, kind, edge = d, "outer", best_edge[b]

            for b in odd_dual:
                if parent[b] is None and tag.get(b) == _INNER and (kind is None or odd_dual[b] < delta):
                    delta, kind, target = odd_dual[b], "expand", b

            if kind is None:
                # 最大基数下已最优，做最后一次对偶更新
                kind = "done"
                delta = max(0, min(dual2))

            for v in range(self.n):
                label = tag.get(top[v])
                if label == _OUTER:
                    dual2[v] -= delta
                elif label == _INNER:
                    dual2[v] += delta
            for b in odd_dual:
                if parent[b] is None:
                    if tag.get(b) == _OUTER:
                        odd_dual[b] += delta
                    elif tag.get(b) == _INNER:
                        odd_dual[b] -= delta

            if kind == "done":
                return False
            if kind == "expand":
                self._expand(target, False)
            else:
                v, w = edge
                tight[(v, w)] = tight[(w, v)] = True
                self.pending.append(v)

    def run(self) -> Dict[int, int]:
        """求解，返回 mate 字典"""
        if self.n == 0:
            return {}
        while self._phase():
            # 阶段结束：展开对偶已归零的顶层外花
            for b in list(self.odd_dual):
                if b not in self.odd_dual:
                    continue
                if self.parent[b] is None and self.tag.get(b) == _OUTER and self.odd_dual[b] <= self.zero:
                    self._expand(b, True)
        return self.mate

    def odd_sets(self) -> List[Tuple[FrozenSet[int], float]]:
        """当前所有非平凡花（含嵌套）的顶点集与 z_B"""
        return [(frozenset(b.vertices()), z) for b, z in self.odd_dual.items()]


def _reduced_costs(g: WeightedGraph, state: BlossomState) -> List[float]:
    """每条边的约化代价 w − y_u − y_v − Σ z'_B"""
    containing: List[List[int]] = [[] for _ in range(g.n)]
    for idx, (members, _) in enumerate(state.blossoms):
        for v in members:
            if 0 <= v < g.n:
                containing[v].append(idx)
    y = state.vertex_duals
    reduced = []
    for u, v, w in g.edges:
        shared = set(containing[u]).intersection(containing[v])
        reduced.append(w - y[u] - y[v] - math.fsum(state.blossoms[b][1] for b in shared))
    return reduced


def _smallest_index_optimum(g: WeightedGraph, state: BlossomState) -> Matching:
    """
    在紧边子图上求代价最小、边编号元组字典序最小的完美匹配

    所有最优匹配只用紧边。整数键 ((K − w)·D) << t 加上 2^(t−1−rank) 的编号奖励：
    编号奖励之和小于 2^t，不会改变代价比较；代价相同时编号最小的边优先。
    """
    matched = set(state.matching.edge_indices)
    reduced = _reduced_costs(g, state)
    candidates = sorted(
        idx for idx, rc in enumerate(reduced)
        if idx in matched or abs(rc) <= CERTIFICATE_TOLERANCE * (1.0 + abs(g.edges[idx].w))
    )
    if len(candidates) == len(matched):
        return state.matching

    exact = [Fraction(g.edges[idx].w) for idx in candidates]
    scale = max(f.denominator for f in exact)
    scaled = [int(f * scale) for f in exact]
    ceiling = max(scaled) + 1
    t = len(candidates)
    keyed = [
        (g.edges[idx].u, g.edges[idx].v, ((ceiling - s) << t) + (1 << (t - 1 - rank)))
        for rank, (idx, s) in enumerate(zip(candidates, scaled))
    ]
    mate = _MatchingEngine(g.n, keyed, integral=True).run()
    if len(mate) != g.n:
        return state.matching
    return Matching.from_edges(g, [g.find_edge(u, v) for u, v in mate.items() if u < v])


def solve_with_state(g: WeightedGraph) -> BlossomState:
    """
    求最小代价完美匹配并返回对偶证书

    Raises:
        OddVertexCountError: n 为奇数
        NoPerfectMatchingError: 不存在完美匹配
    """
    if g.n % 2:
        raise OddVertexCountError(g.n)
    if g.n == 0:
        return BlossomState(vertex_duals=(), blossoms=(), matching=Matching.empty())

    offset = (max(e.w for e in g.edges) if g.edges else 0.0) + 1.0
    engine = _MatchingEngine(g.n, [(u, v, offset - w) for u, v, w in g.edges])
    mate = engine.run()
    if len(mate) != g.n:
        raise NoPerfectMatchingError()

    matching = Matching.from_edges(g, [g.find_edge(u, v) for u, v in mate.items() if u < v])
    vertex_duals = tuple(offset / 2.0 - engine.dual2[v] / 2.0 for v in range(g.n))
    blossoms = tuple((members, -z) for members, z in engine.odd_sets())
    state = BlossomState(vertex_duals=vertex_duals, blossoms=blossoms, matching=matching)
    # 任一最优匹配与同一组最优对偶都满足互补松弛，证书可以沿用
    return BlossomState(vertex_duals, blossoms, _smallest_index_optimum(g, state))


def solve_perfect_matching(g: WeightedGraph) -> Matching:
    """
    一般图最小代价完美匹配

    Examples:
        >>> from randmatch.graph.types import WeightedGraph
        >>> solve_perfect_matching(WeightedGraph(2, [(0, 1, 0.4)])).cost
        0.4
        >>> unit = WeightedGraph(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)])
        >>> solve_perfect_matching(unit).edge_indices
        (0, 5)

    Raises:
        OddVertexCountError: n 为奇数
        NoPerfectMatchingError: 不存在完美匹配
    """
    return solve_with_state(g).matching


def certificate_violations(
    g: WeightedGraph,
    m: Matching,
    state: BlossomState,
    tolerance: float = CERTIFICATE_TOLERANCE,
) -> List[str]:
    """
    独立于求解器内部检查最优性证书，返回违反项列表（空列表表示通过）

    检查项：完美性、对偶可行性、匹配边紧性、z'_B ≤ 0、花为奇数集且两两层状、
    z'_B < 0 的花是满的（含 (|B|−1)/2 条内部匹配边）。
    """
    violations = []
    if len(state.vertex_duals) != g.n:
        return [f"顶点对偶数量 {len(state.vertex_duals)} 与 n={g.n} 不符"]

    covered = [v for pair in m.pairs for v in pair]
    if len(covered) != g.n or len(set(covered)) != g.n:
        violations.append("匹配不是完美匹配")

    sets = [members for members, _ in state.blossoms]
    for idx, (members, z) in enumerate(state.blossoms):
        if len(members) % 2 == 0 or len(members) < 3:
            violations.append(f"花 {idx} 的顶点数 {len(members)} 不是 ≥3 的奇数")
        if z > tolerance:
            violations.append(f"花 {idx} 的对偶为正: {z:.3e}")
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            a, b = sets[i], sets[j]
            if a & b and not (a <= b or b <= a):
                violations.append(f"花 {i} 与花 {j} 交叉，不满足层状结构")

    matched = set(m.edge_indices)
    for idx, reduced in enumerate(_reduced_costs(g, state)):
        u, v, _ = g.edges[idx]
        if reduced < -tolerance:
            violations.append(f"边 ({u}, {v}) 不可行: 约化代价 {reduced:.3e}")
        if idx in matched and abs(reduced) > tolerance:
            violations.append(f"匹配边 ({u}, {v}) 不紧: 约化代价 {reduced:.3e}")

    mates = {}
    for u, v in m.pairs:
        mates[u], mates[v] = v, u
    for idx, (members, z) in enumerate(state.blossoms):
        if z < -tolerance:
            inside = sum(1 for x in members if mates.get(x) in members) // 2
            if inside != (len(members) - 1) // 2:
                violations.append(f"花 {idx} 对偶非零但不满: 内部匹配边 {inside} 条")
    return violations


def verify_certificate(g: WeightedGraph, m: Matching, state: BlossomState) -> bool:
    """对偶可行性与互补松弛均在 1e-9 内成立时返回 True"""
    return not certificate_violations(g, m, state)
