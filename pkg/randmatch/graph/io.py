# coding=utf-8
"""
图文件读写

格式（UTF-8 文本）:
    # 注释行
    bipartite <n_left> <n_right>      或      general <n>
    <u> <v> <w>
    ...

权重以 17 位有效数字写出，读回后与原浮点数逐位相同。写出时边按 (u, v) 字典序排列。
"""

import math
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

from randmatch.graph.types import BipartiteWeightedGraph, WeightedEdge, WeightedGraph
from randmatch.utils.errors import GraphParseError

Graph = Union[BipartiteWeightedGraph, WeightedGraph]


def format_weight(w: float) -> str:
    """17 位有效数字"""
    return format(float(w), ".17g")


def _parse_header(tokens: List[str], source: str, line_no: int) -> Tuple[str, Tuple[int, ...]]:
    kind = tokens[0].lower()
    expected = {"bipartite": 2, "general": 1}
    if kind not in expected:
        raise GraphParseError(source, line_no, f"未知图类型 '{tokens[0]}'")
    if len(tokens) != expected[kind] + 1:
        raise GraphParseError(source, line_no, f"{kind} 头部需要 {expected[kind]} 个整数")
    try:
        sizes = tuple(int(t) for t in tokens[1:])
    except ValueError:
        raise GraphParseError(source, line_no, f"顶点数不是整数: {' '.join(tokens[1:])}")
    if any(s < 0 for s in sizes):
        raise GraphParseError(source, line_no, "顶点数不能为负")
    return kind, sizes


def parse_graph_text(text: str, source: str = "<string>") -> Graph:
    """
    解析图文本

    Args:
        text: 文件内容
        source: 来源名称（用于错误消息）

    Raises:
        GraphParseError: 头部/边行格式错误、下标越界、自环、重复边、非法权重
    """
    kind: Optional[str] = None
    sizes: Tuple[int, ...] = ()
    edges: List[WeightedEdge] = []
    seen = set()
    last_line = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()

        if kind is None:
            kind, sizes = _parse_header(tokens, source, line_no)
            continue

        if len(tokens) != 3:
            raise GraphParseError(source, line_no, f"边行需要 3 个字段 '<u> <v> <w>'，实际 {len(tokens)} 个")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(source, line_no, f"顶点下标不是整数: {tokens[0]} {tokens[1]}")
        try:
            w = float(tokens[2])
        except ValueError:
            raise GraphParseError(source, line_no, f"权重不是数字: {tokens[2]}")
        if not math.isfinite(w) or w < 0:
            raise GraphParseError(source, line_no, f"权重必须是有限非负数: {tokens[2]}")

        if kind == "bipartite":
            n_left, n_right = sizes
            if not (0 <= u < n_left):
                raise GraphParseError(source, line_no, f"A 侧下标 {u} 超出范围 [0, {n_left})")
            if not (0 <= v < n_right):
                raise GraphParseError(source, line_no, f"B 侧下标 {v} 超出范围 [0, {n_right})")
            key = (u, v)
        else:
            (n,) = sizes
            if not (0 <= u < n and 0 <= v < n):
                raise GraphParseError(source, line_no, f"顶点下标 ({u}, {v}) 超出范围 [0, {n})")
            if u == v:
                raise GraphParseError(source, line_no, f"不允许自环 ({u}, {v})")
            key = (min(u, v), max(u, v))

        if key in seen:
            raise GraphParseError(source, line_no, f"重复边 {key}")
        seen.add(key)
        edges.append(WeightedEdge(u, v, w))

    if kind is None:
        raise GraphParseError(source, max(last_line, 1), "缺少头部行")

    if kind == "bipartite":
        return BipartiteWeightedGraph(sizes[0], sizes[1], tuple(edges))
    return WeightedGraph(sizes[0], tuple(edges))


def format_graph(graph: Graph, comments: Optional[Iterable[str]] = None) -> str:
    """
    规范化输出图文本

    Args:
        graph: 图
        comments: 写在头部之前的注释行（不含 '#'）
    """
    lines = [f"# {c}" for c in (comments or [])]
    if graph.is_bipartite:
        lines.append(f"bipartite {graph.n_left} {graph.n_right}")
    else:
        lines.append(f"general {graph.n}")
    for u, v, w in sorted(graph.edges):
        lines.append(f"{u} {v} {format_weight(w)}")
    return "\n".join(lines) + "\n"


def read_graph(path: Union[str, Path]) -> Graph:
    """
    读取图文件

    Raises:
        GraphParseError: 文件格式错误（含行号）
        FileNotFoundError: 文件不存在
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    return parse_graph_text(text, str(path))


def write_graph(graph: Graph, path: Union[str, Path], comments: Optional[Iterable[str]] = None) -> Path:
    """
    写出图文件（边按字典序）

    Returns:
        写入的文件路径
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_graph(graph, comments))
    return path
