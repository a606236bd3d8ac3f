# coding=utf-8
"""
单次试验

每次试验由 (base_seed, 用途, trial_index) 派生独立的随机流，
因此结果与执行顺序、并行度无关。每个测量量对应一个处理函数，
返回该次试验的测量值；求解器报告不可行时整个试验记为 infeasible。
"""

import math
from typing import Callable, Dict, Union

from randmatch.diagnostics import DiagnosticsConfig, max_matching_edge_cost, probe_diameter
from randmatch.graph import (
    PURPOSE_GRAPH,
    PURPOSE_PAIRS,
    PURPOSE_SPECIAL,
    BipartiteWeightedGraph,
    RngStream,
    SpecialVertexConfig,
    WeightedGraph,
    augment_special_vertex,
    generate,
)
from randmatch.montecarlo.spec import (
    CONCENTRATION,
    COST_SEQUENCE,
    DIAMETER,
    MAX_EDGE,
    MEMBERSHIP,
    OUTCOME_INFEASIBLE,
    PERFECT_COST,
    PNR,
    ExperimentSpec,
    TrialRecord,
)
from randmatch.solver import (
    Matching,
    solve_assignment,
    solve_perfect_matching,
    solve_sequence,
)
from randmatch.utils.errors import NoMatchingError

Graph = Union[BipartiteWeightedGraph, WeightedGraph]
Scalars = Dict[str, float]

# 截断代价与原代价视为相同的容差
TRUNCATION_TOLERANCE = 1e-12


def perfect_matching(g: Graph) -> Matching:
    """二部图走增量求解器，一般图走带花算法"""
    if g.is_bipartite:
        return solve_assignment(g)
    return solve_perfect_matching(g)


def _log_scale(spec: ExperimentSpec) -> float:
    """log n / (n·p)"""
    n, p = spec.model.n, spec.model.p
    return math.log(n) / (n * p)


def measure_perfect_cost(spec: ExperimentSpec, g: Graph, trial_index: int) -> Scalars:
    cost = perfect_matching(g).cost
    return {"cost": cost, "p_cost": spec.model.p * cost}


def measure_cost_sequence(spec: ExperimentSpec, g: Graph, trial_index: int) -> Scalars:
    """C(n, r_max) 与每一步增量 inc_1 .. inc_{r_max}"""
    seq = solve_sequence(g, spec.params["r_max"])
    cost = seq.cost(seq.r_max)
    scalars = {"cost": cost, "p_cost": spec.model.p * cost}
    for r, inc in enumerate(seq.increments, start=1):
        scalars[f"inc_{r}"] = inc
    return scalars


def measure_pnr(spec: ExperimentSpec, g: Graph, trial_index: int) -> Scalars:
    """加入特殊顶点 b_{n+1} 后，它是否属于最优 r-匹配覆盖的 B_r^*"""
    r = spec.params["r"]
    n = spec.model.n
    rng = RngStream.for_purpose(spec.base_seed, PURPOSE_SPECIAL, trial_index)
    augmented = augment_special_vertex(g, SpecialVertexConfig(spec.params["lambda"]), rng)
    if r == 0:
        return {"hit": 0.0}
    seq = solve_sequence(augmented, r)
    return {"hit": 1.0 if n in seq.final_matching.right_vertices else 0.0}


def measure_membership(spec: ExperimentSpec, g: Graph, trial_index: int) -> Scalars:
    """member_j = 1 当且仅当 b_j ∈ B_r"""
    seq = solve_sequence(g, spec.params["r"])
    covered = set(seq.final_matching.right_vertices)
    return {f"member_{j}": 1.0 if j in covered else 0.0 for j in range(spec.model.n)}


def measure_concentration(spec: ExperimentSpec, g: Graph, trial_index: int) -> Scalars:
    """原代价 C 与截断代价 Ĉ（ŵ = min(w, μ)，μ = c·log n/(np)）"""
    mu = spec.params["mu_constant"] * _log_scale(spec)
    cost = perfect_matching(g).cost
    truncated = perfect_matching(g.truncate_weights(mu)).cost
    p = spec.model.p
    return {
        "cost": cost,
        "p_cost": p * cost,
        "truncated_cost": truncated,
        "p_truncated_cost": p * truncated,
        "truncated_differs": 1.0 if abs(cost - truncated) > TRUNCATION_TOLERANCE * (1.0 + cost) else 0.0,
    }


def measure_max_edge(spec: ExperimentSpec, g: Graph, trial_index: int) -> Scalars:
    """
    最优完美匹配的最大边权，按 log n/(np) 归一化

    二部模型额外记录尾部增量 max_{r ≥ n−m} (C(n,r+1) − C(n,r)) 的归一化值。
    """
    scale = _log_scale(spec)
    n = spec.model.n
    scalars: Scalars = {}
    if g.is_bipartite:
        seq = solve_sequence(g, n)
        matching = seq.final_matching
        m = spec.params["m"]
        # increments[r] = C(n, r+1) − C(n, r)
        tail = seq.increments[n - m:] if m > 0 else []
        if tail:
            scalars["tail_increment_scaled"] = max(tail) / scale
    else:
        matching = perfect_matching(g)

    max_edge = max_matching_edge_cost(matching)
    scalars["max_edge"] = max_edge
    scalars["max_edge_scaled"] = max_edge / scale
    scalars["exceeds_threshold"] = 1.0 if max_edge > spec.params["threshold_constant"] * scale else 0.0
    return scalars


def measure_diameter(spec: ExperimentSpec, g: Graph, trial_index: int) -> Scalars:
    """在最优匹配上抽样探测 ab-直径"""
    n = spec.model.n
    if g.is_bipartite:
        matching = solve_sequence(g, spec.params["r"]).final_matching
    else:
        matching = perfect_matching(g)
    cfg = DiagnosticsConfig.for_graph(
        n,
        bipartite=g.is_bipartite,
        k=spec.params.get("k"),
        pair_samples=spec.params["pair_samples"],
    )
    rng = RngStream.for_purpose(spec.base_seed, PURPOSE_PAIRS, trial_index)
    _, report = probe_diameter(g, matching, cfg, rng)

    scalars: Scalars = {
        "k0": float(cfg.k0),
        "unreachable": float(report.unreachable),
        "within_bound": 1.0 if report.within_bound else 0.0,
    }
    if report.max_hops is not None:
        scalars["max_hops"] = float(report.max_hops)
    if report.max_hops_to_free is not None:
        scalars["max_hops_to_free"] = float(report.max_hops_to_free)
    return scalars


QUANTITY_HANDLERS: Dict[str, Callable[[ExperimentSpec, Graph, int], Scalars]] = {
    PERFECT_COST: measure_perfect_cost,
    COST_SEQUENCE: measure_cost_sequence,
    PNR: measure_pnr,
    MEMBERSHIP: measure_membership,
    CONCENTRATION: measure_concentration,
    MAX_EDGE: measure_max_edge,
    DIAMETER: measure_diameter,
}


def run_trial(spec: ExperimentSpec, trial_index: int) -> TrialRecord:
    """
    执行单次试验

    Returns:
        TrialRecord；求解不可行时 outcome 为 infeasible，scalars 只含 failed_r

    Raises:
        RandMatchError: 除不可行以外的求解器错误原样抛出
    """
    rng = RngStream.for_purpose(spec.base_seed, PURPOSE_GRAPH, trial_index)
    record = TrialRecord(trial_index=trial_index, stream_id=rng.stream_id)
    g = generate(spec.model, rng)
    try:
        record.scalars = QUANTITY_HANDLERS[spec.quantity](spec, g, trial_index)
    except NoMatchingError as e:
        record.outcome = OUTCOME_INFEASIBLE
        record.scalars = {"failed_r": float(e.r)}
    return record
