# coding=utf-8
"""
匹配数据模型
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Tuple, Union

from randmatch.graph.types import BipartiteWeightedGraph, WeightedGraph
from randmatch.utils.errors import InvalidParameterError


@dataclass(frozen=True)
class Matching:
    """匹配：顶点不相交的边集合"""

    pairs: Tuple[Tuple[int, int], ...]      # (u, v)，按 u 升序
    edge_indices: Tuple[int, ...]           # 与 pairs 对应的边编号
    weights: Tuple[float, ...]              # 与 pairs 对应的边权
    cost: float                             # 边权之和（math.fsum）

    @classmethod
    def from_edges(
        cls,
        graph: Union[BipartiteWeightedGraph, WeightedGraph],
        edge_indices: Iterable[int],
    ) -> "Matching":
        """
        由边编号构造匹配

        Raises:
            InvalidParameterError: 边编号无效或边不是顶点不相交
        """
        items = []
        used_left, used_right = set(), set()
        for idx in edge_indices:
            if not (0 <= idx < len(graph.edges)):
                raise InvalidParameterError(f"边编号 {idx} 不存在")
            u, v, w = graph.edges[idx]
            if graph.is_bipartite:
                clash = u in used_left or v in used_right
                used_left.add(u)
                used_right.add(v)
            else:
                clash = u in used_left or v in used_left
                used_left.update((u, v))
            if clash:
                raise InvalidParameterError(f"边 ({u}, {v}) 与已有匹配边共享顶点")
            items.append((u, v, idx, w))
        items.sort()
        return cls(
            pairs=tuple((u, v) for u, v, _, _ in items),
            edge_indices=tuple(i for _, _, i, _ in items),
            weights=tuple(w for _, _, _, w in items),
            cost=math.fsum(w for _, _, _, w in items),
        )

    @classmethod
    def empty(cls) -> "Matching":
        return cls(pairs=(), edge_indices=(), weights=(), cost=0.0)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def left_vertices(self) -> Tuple[int, ...]:
        return tuple(u for u, _ in self.pairs)

    @property
    def right_vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(v for _, v in self.pairs))

    def mate_map(self) -> Dict[int, int]:
        """u -> v（一般图中双向）"""
        mates = {}
        for u, v in self.pairs:
            mates[u] = v
        return mates

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "pairs": [list(p) for p in self.pairs],
            "edge_indices": list(self.edge_indices),
            "weights": list(self.weights),
            "cost": self.cost,
        }
