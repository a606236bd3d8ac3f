# coding=utf-8
"""
测试公共设施

耗时较长的验收实验标记为 slow，需要 --runslow 才运行。
"""

import pytest

from randmatch.graph import (
    COMPLETE,
    COMPLETE_BIPARTITE,
    GNNP,
    GNP,
    ModelSpec,
    PURPOSE_GRAPH,
    RngStream,
    generate,
)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="运行标记为 slow 的验收实验")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="需要 --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def make_graph(model: str, n: int, p: float = 1.0, seed: int = 0, index: int = 0):
    """按 (模型, n, p, 种子, 编号) 生成可复现的随机图"""
    return generate(ModelSpec(model, n, p), RngStream.for_purpose(seed, PURPOSE_GRAPH, index))


@pytest.fixture
def square_2x2():
    """代价矩阵 [[1, 2], [3, 1]]，最优代价 2"""
    from randmatch.graph import BipartiteWeightedGraph

    return BipartiteWeightedGraph(2, 2, [(0, 0, 1.0), (0, 1, 2.0), (1, 0, 3.0), (1, 1, 1.0)])


@pytest.fixture
def small_bipartite_graphs():
    """二部图校验实例：完全二部图与稀疏二部图，n = 2..6"""
    graphs = []
    for n in range(2, 7):
        for seed in range(4):
            graphs.append(make_graph(COMPLETE_BIPARTITE, n, 1.0, seed))
            graphs.append(make_graph(GNNP, n, 0.5, seed))
    return graphs


@pytest.fixture
def small_general_graphs():
    """一般图校验实例：n ∈ {4, 6, 8}"""
    graphs = []
    for n in (4, 6, 8):
        for seed in range(4):
            graphs.append(make_graph(COMPLETE, n, 1.0, seed))
            graphs.append(make_graph(GNP, n, 0.6, seed))
    return graphs
