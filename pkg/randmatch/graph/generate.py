# coding=utf-8
"""
随机图生成

四种模型：complete_bipartite (K_{n,n})、gnnp (G_{n,n,p})、complete (K_n)、gnp (G_{n,p})。
候选边按字典序排列；先为全部候选边抽取保留判定，再为保留的边依次抽取指数权重。
"""

from typing import Optional, Union

import numpy as np

from randmatch.graph.rng import RngStream
from randmatch.graph.types import (
    BipartiteWeightedGraph,
    ModelSpec,
    SpecialVertexConfig,
    WeightedEdge,
    WeightedGraph,
)
from randmatch.utils.errors import InvalidParameterError
from randmatch.utils.validators import validate_positive


def exponential_from_uniform(u: Union[float, np.ndarray], rate: float = 1.0) -> Union[float, np.ndarray]:
    """
    逆 CDF 变换 -ln(U)/rate，U ∈ (0, 1]

    Examples:
        >>> exponential_from_uniform(1.0, 1.0)
        0.0
        >>> round(exponential_from_uniform(np.exp(-2.0), 2.0), 12)
        1.0
    """
    rate = validate_positive(rate, "rate")
    if np.isscalar(u):
        if not (0.0 < u <= 1.0):
            raise InvalidParameterError(f"U 必须在 (0, 1] 区间内，当前值: {u}")
        return float(0.0 - np.log(u) / rate)
    return 0.0 - np.log(u) / rate


def sample_exponential(rate: float, rng: RngStream, size: Optional[int] = None) -> Union[float, np.ndarray]:
    """
    抽取指数分布 E(rate)，Pr(E ≥ x) = e^{-rate·x}

    Args:
        rate: 速率，必须 > 0
        rng: 随机数流
        size: None 返回单个数值，否则返回长度为 size 的数组

    Raises:
        InvalidParameterError: rate 非正
    """
    rate = validate_positive(rate, "rate")
    return exponential_from_uniform(rng.uniform_open_left(size), rate)


def _bipartite_pairs(n: int):
    idx = np.arange(n * n)
    return idx // n, idx % n


def generate(spec: ModelSpec, rng: RngStream) -> Union[BipartiteWeightedGraph, WeightedGraph]:
    """
    按模型生成随机带权图

    Args:
        spec: 模型参数
        rng: 随机数流（会被推进）

    Returns:
        二部模型返回 BipartiteWeightedGraph，否则返回 WeightedGraph
    """
    n = spec.n
    if spec.is_bipartite:
        us, vs = _bipartite_pairs(n)
    else:
        us, vs = np.triu_indices(n, k=1)

    if spec.p < 1.0:
        keep = rng.uniform(len(us)) < spec.p
        us, vs = us[keep], vs[keep]

    weights = sample_exponential(spec.rate, rng, size=len(us))
    edges = tuple(
        WeightedEdge(u, v, w) for u, v, w in zip(us.tolist(), vs.tolist(), weights.tolist())
    )

    if spec.is_bipartite:
        return BipartiteWeightedGraph(n, n, edges)
    return WeightedGraph(n, edges)


def augment_special_vertex(
    g: BipartiteWeightedGraph,
    cfg: SpecialVertexConfig,
    rng: RngStream,
) -> BipartiteWeightedGraph:
    """
    添加特殊顶点 b_{n+1}，与 A 侧每个顶点相连，边权为独立 E(λ)

    新顶点编号为 n（0 起始），新边追加在原边之后，原边编号不变。

    Raises:
        InvalidParameterError: 输入不是 n×n 二部图
    """
    if g.n_left != g.n_right:
        raise InvalidParameterError(
            f"特殊顶点只能添加到 n×n 二部图，当前为 {g.n_left}×{g.n_right}"
        )
    n = g.n_left
    weights = sample_exponential(cfg.lam, rng, size=n).tolist()
    extra = tuple(WeightedEdge(a, n, w) for a, w in zip(range(n), weights))
    return BipartiteWeightedGraph(n, n + 1, g.edges + extra)
