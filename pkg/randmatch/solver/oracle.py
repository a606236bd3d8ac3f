# coding=utf-8
"""
穷举求解器

仅用于小规模实例的独立校验。二部图枚举顺序固定，遇到更优解才替换，
代价相同时返回枚举顺序最靠前的一个；一般图代价相同时取边编号升序元组字典序最小的一个。
"""

import math
from typing import List, Optional, Tuple

from randmatch.graph.types import BipartiteWeightedGraph, WeightedGraph
from randmatch.solver.matching import Matching
from randmatch.utils.errors import NoMatchingError, NoPerfectMatchingError, OddVertexCountError, SizeGuardError
from randmatch.utils.validators import validate_count

BIPARTITE_LIMIT = 9
GENERAL_LIMIT = 12


def brute_force_bipartite(g: BipartiteWeightedGraph, r: int) -> Matching:
    """
    枚举 A_r → B 的全部单射，返回最小代价 r-匹配

    Args:
        g: 二部图，n_left ≤ 9
        r: 匹配的 A 侧顶点数

    Raises:
        SizeGuardError: n_left > 9
        NoMatchingError: 不存在覆盖 A_r 的匹配
    """
    if g.n_left > BIPARTITE_LIMIT:
        raise SizeGuardError("n_left", g.n_left, BIPARTITE_LIMIT)
    r = validate_count(r, "r", minimum=0, maximum=g.n_left)
    if r == 0:
        return Matching.empty()

    edges = g.edges
    # a 的候选边按边编号排列
    options = [list(g.adjacency_left[a]) for a in range(r)]
    used = [False] * g.n_right
    chosen: List[int] = []
    best: List[Optional[Tuple[float, Tuple[int, ...]]]] = [None]

    def search(a: int) -> None:
        if a == r:
            cost = math.fsum(edges[e].w for e in chosen)
            if best[0] is None or cost < best[0][0]:
                best[0] = (cost, tuple(chosen))
            return
        for e in options[a]:
            v = edges[e].v
            if used[v]:
                continue
            used[v] = True
            chosen.append(e)
            search(a + 1)
            chosen.pop()
            used[v] = False

    search(0)
    if best[0] is None:
        raise NoMatchingError(r)
    return Matching.from_edges(g, best[0][1])


def brute_force_general(g: WeightedGraph) -> Matching:
    """
    枚举一般图的全部完美匹配

    每层把编号最小的未匹配顶点与其某个未匹配邻居配对（邻居按边编号顺序尝试）。

    Raises:
        SizeGuardError: n > 12
        OddVertexCountError: n 为奇数
        NoPerfectMatchingError: 不存在完美匹配
    """
    if g.n > GENERAL_LIMIT:
        raise SizeGuardError("n", g.n, GENERAL_LIMIT)
    if g.n % 2:
        raise OddVertexCountError(g.n)
    if g.n == 0:
        return Matching.empty()

    edges = g.edges
    matched = [False] * g.n
    chosen: List[int] = []
    best: List[Optional[Tuple[float, Tuple[int, ...]]]] = [None]

    def search() -> None:
        try:
            i = matched.index(False)
        except ValueError:
            key = (math.fsum(edges[e].w for e in chosen), tuple(sorted(chosen)))
            if best[0] is None or key < best[0]:
                best[0] = key
            return
        matched[i] = True
        for e in g.adjacency[i]:
            u, v, _ = edges[e]
            j = v if u == i else u
            if matched[j]:
                continue
            matched[j] = True
            chosen.append(e)
            search()
            chosen.pop()
            matched[j] = False
        matched[i] = False

    search()
    if best[0] is None:
        raise NoPerfectMatchingError()
    return Matching.from_edges(g, best[0][1])
