# coding=utf-8
"""
图数据模型

定义带权二部图、一般图以及随机模型参数。所有类型构造后不可变，
可在线程/进程间只读共享。
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from randmatch.utils.errors import InvalidParameterError
from randmatch.utils.validators import validate_count, validate_positive, validate_probability


# 随机模型
COMPLETE_BIPARTITE = "complete_bipartite"
GNNP = "gnnp"
COMPLETE = "complete"
GNP = "gnp"

MODELS = (COMPLETE_BIPARTITE, GNNP, COMPLETE, GNP)
BIPARTITE_MODELS = (COMPLETE_BIPARTITE, GNNP)
COMPLETE_MODELS = (COMPLETE_BIPARTITE, COMPLETE)

# 稠密代价矩阵视图的规模上限
DENSE_VIEW_LIMIT = 1000


class WeightedEdge(NamedTuple):
    """带权边；二部图中 u 属于 A 侧，v 属于 B 侧"""

    u: int
    v: int
    w: float


def _check_weight(w: float, u: int, v: int) -> float:
    w = float(w)
    if not math.isfinite(w) or w < 0:
        raise InvalidParameterError(
            f"边 ({u}, {v}) 的权重必须是有限非负数，当前值: {w}"
        )
    return w


def _coerce_edges(edges: Iterable[Sequence]) -> List[WeightedEdge]:
    return [e if isinstance(e, WeightedEdge) else WeightedEdge(int(e[0]), int(e[1]), float(e[2])) for e in edges]


@dataclass(frozen=True)
class BipartiteWeightedGraph:
    """
    带权二部图 A ∪ B

    adjacency_left[u] / adjacency_right[v] 为关联边在 edges 中的下标（升序）。
    """

    n_left: int                                     # |A|
    n_right: int                                    # |B|
    edges: Tuple[WeightedEdge, ...] = ()            # 边表，下标即边编号
    adjacency_left: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    adjacency_right: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        validate_count(self.n_left, "n_left")
        validate_count(self.n_right, "n_right")
        edges = tuple(_coerce_edges(self.edges))

        left: List[List[int]] = [[] for _ in range(self.n_left)]
        right: List[List[int]] = [[] for _ in range(self.n_right)]
        seen = set()
        for idx, (u, v, w) in enumerate(edges):
            if not (0 <= u < self.n_left):
                raise InvalidParameterError(f"边 {idx}: A 侧下标 {u} 超出范围 [0, {self.n_left})")
            if not (0 <= v < self.n_right):
                raise InvalidParameterError(f"边 {idx}: B 侧下标 {v} 超出范围 [0, {self.n_right})")
            _check_weight(w, u, v)
            if (u, v) in seen:
                raise InvalidParameterError(f"重复边 ({u}, {v})")
            seen.add((u, v))
            left[u].append(idx)
            right[v].append(idx)

        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "adjacency_left", tuple(tuple(a) for a in left))
        object.__setattr__(self, "adjacency_right", tuple(tuple(a) for a in right))

    @property
    def is_bipartite(self) -> bool:
        return True

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> Dict[Tuple[int, int], int]:
        """(u, v) -> 边编号"""
        return {(e.u, e.v): i for i, e in enumerate(self.edges)}

    def canonical(self) -> "BipartiteWeightedGraph":
        """按 (u, v) 字典序排列边"""
        return BipartiteWeightedGraph(self.n_left, self.n_right, tuple(sorted(self.edges)))

    def cost_matrix(self) -> np.ndarray:
        """
        稠密代价矩阵视图，缺失边为 +inf

        Raises:
            InvalidParameterError: 规模超过 DENSE_VIEW_LIMIT
        """
        if max(self.n_left, self.n_right) > DENSE_VIEW_LIMIT:
            raise InvalidParameterError(
                f"稠密视图仅支持 n ≤ {DENSE_VIEW_LIMIT}",
                suggestion="大规模实例请直接使用边表",
            )
        matrix = np.full((self.n_left, self.n_right), np.inf)
        for u, v, w in self.edges:
            matrix[u, v] = w
        return matrix

    def truncate_weights(self, mu: float) -> "BipartiteWeightedGraph":
        """返回权重截断为 min(w, mu) 的副本"""
        mu = validate_positive(mu, "mu")
        return BipartiteWeightedGraph(
            self.n_left, self.n_right,
            tuple(WeightedEdge(u, v, min(w, mu)) for u, v, w in self.edges),
        )

    def relabel(self, left_perm: Sequence[int], right_perm: Sequence[int]) -> "BipartiteWeightedGraph":
        """按置换重新编号两侧顶点（边顺序保持不变）"""
        return BipartiteWeightedGraph(
            self.n_left, self.n_right,
            tuple(WeightedEdge(int(left_perm[u]), int(right_perm[v]), w) for u, v, w in self.edges),
        )

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "kind": "bipartite",
            "n_left": self.n_left,
            "n_right": self.n_right,
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class WeightedGraph:
    """
    带权一般图，边统一存为 u < v
    """

    n: int                                          # 顶点数
    edges: Tuple[WeightedEdge, ...] = ()            # 边表，下标即边编号
    adjacency: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        validate_count(self.n, "n")
        edges = []
        adjacency: List[List[int]] = [[] for _ in range(self.n)]
        seen = set()
        for idx, (u, v, w) in enumerate(_coerce_edges(self.edges)):
            if u == v:
                raise InvalidParameterError(f"边 {idx}: 不允许自环 ({u}, {v})")
            if u > v:
                u, v = v, u
            if not (0 <= u and v < self.n):
                raise InvalidParameterError(f"边 {idx}: 顶点下标 ({u}, {v}) 超出范围 [0, {self.n})")
            w = _check_weight(w, u, v)
            if (u, v) in seen:
                raise InvalidParameterError(f"重复边 ({u}, {v})")
            seen.add((u, v))
            edges.append(WeightedEdge(u, v, w))
            adjacency[u].append(idx)
            adjacency[v].append(idx)

        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in adjacency))

    @property
    def is_bipartite(self) -> bool:
        return False

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> Dict[Tuple[int, int], int]:
        """(u, v) -> 边编号，u < v"""
        return {(e.u, e.v): i for i, e in enumerate(self.edges)}

    def find_edge(self, u: int, v: int) -> Optional[int]:
        """查找无向边编号，不存在返回 None"""
        return self.edge_index.get((u, v) if u < v else (v, u))

    def canonical(self) -> "WeightedGraph":
        """按 (u, v) 字典序排列边"""
        return WeightedGraph(self.n, tuple(sorted(self.edges)))

    def truncate_weights(self, mu: float) -> "WeightedGraph":
        """返回权重截断为 min(w, mu) 的副本"""
        mu = validate_positive(mu, "mu")
        return WeightedGraph(self.n, tuple(WeightedEdge(u, v, min(w, mu)) for u, v, w in self.edges))

    def relabel(self, perm: Sequence[int]) -> "WeightedGraph":
        """按置换重新编号顶点（边顺序保持不变）"""
        return WeightedGraph(self.n, tuple(WeightedEdge(int(perm[u]), int(perm[v]), w) for u, v, w in self.edges))

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "kind": "general",
            "n": self.n,
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class ModelSpec:
    """随机图模型参数"""

    model: str                          # complete_bipartite / gnnp / complete / gnp
    n: int                              # 顶点数（二部图为每侧顶点数）
    p: float = 1.0                      # 边概率，完全图模型强制为 1
    rate: float = 1.0                   # 边权指数分布速率

    def __post_init__(self):
        if self.model not in MODELS:
            raise InvalidParameterError(
                f"未知模型 '{self.model}'",
                suggestion=f"支持的模型: {', '.join(MODELS)}",
            )
        validate_count(self.n, "n", minimum=1)
        p = validate_probability(self.p)
        if self.model in COMPLETE_MODELS:
            p = 1.0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "rate", validate_positive(self.rate, "rate"))

    @property
    def is_bipartite(self) -> bool:
        return self.model in BIPARTITE_MODELS

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {"model": self.model, "n": self.n, "p": self.p, "rate": self.rate}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ModelSpec":
        """从字典创建"""
        return cls(
            model=data.get("model", ""),
            n=data.get("n", 0),
            p=data.get("p", 1.0),
            rate=data.get("rate", 1.0),
        )


@dataclass(frozen=True)
class SpecialVertexConfig:
    """
    特殊顶点 b_{n+1} 的配置

    估计量 (1/λ)·Pr(b_{n+1} ∈ B_r^*) 相对 λ→0 极限的偏差为 O(λ)。
    """

    lam: float = 0.01                   # 特殊顶点关联边的指数速率

    def __post_init__(self):
        object.__setattr__(self, "lam", validate_positive(self.lam, "lambda"))
