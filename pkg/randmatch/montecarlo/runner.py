# coding=utf-8
"""
实验执行器

试验按编号切块后串行执行或交给进程池并行执行，结果按 trial_index 排序，
所以记录列表与 workers 无关。
"""

import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Any, Dict, List, Optional, Tuple

from randmatch.montecarlo.spec import (
    CONCENTRATION,
    COST_SEQUENCE,
    DIAMETER,
    MAX_EDGE,
    MEMBERSHIP,
    PERFECT_COST,
    PNR,
    ExperimentSpec,
    Summary,
    TrialRecord,
)
from randmatch.montecarlo.stats import summarize
from randmatch.montecarlo.trials import run_trial
from randmatch.theory import expected_increment, limit_value, perfect_cost_theory, pnr_finite_lambda
from randmatch.utils.validators import validate_count

# 主测量量
PRIMARY_METRICS = {
    PERFECT_COST: "p_cost",
    COST_SEQUENCE: "cost",
    PNR: "hit",
    MEMBERSHIP: "member_0",
    CONCENTRATION: "p_cost",
    MAX_EDGE: "max_edge_scaled",
    DIAMETER: "max_hops",
}


def primary_metric(spec: ExperimentSpec) -> str:
    return PRIMARY_METRICS[spec.quantity]


def theory_value(spec: ExperimentSpec) -> Optional[float]:
    """
    主测量量对应的理论值

    - perfect_cost: p·E[C]，完全二部图为 parisi_sum(n)，其余为 π²/6 或 π²/12
    - cost_sequence: Σ_{r ≤ r_max} expected_increment(n, r, p)
    - pnr: 有限 λ 下 b_{n+1} 被选中的概率
    - membership: r/n
    - concentration: π²/6 或 π²/12
    """
    model, n, p = spec.model.model, spec.model.n, spec.model.p
    q = spec.quantity
    if q == PERFECT_COST:
        return p * perfect_cost_theory(model, n, p)
    if q == COST_SEQUENCE:
        r_max = spec.params["r_max"]
        return math.fsum(expected_increment(n, r, p) for r in range(1, r_max + 1))
    if q == PNR:
        lam = spec.params["lambda"]
        return lam * pnr_finite_lambda(n, spec.params["r"], p, lam)
    if q == MEMBERSHIP:
        return spec.params["r"] / n
    if q == CONCENTRATION:
        return p * limit_value(model, p)
    return None


def _run_chunk(args: Tuple[Dict[str, Any], List[int]]) -> List[Dict[str, Any]]:
    """进程池任务，必须定义在模块顶层以便 pickle"""
    spec_dict, indices = args
    spec = ExperimentSpec.from_dict(spec_dict)
    return [run_trial(spec, i).to_dict() for i in indices]


def _chunks(trials: int, chunk_size: int) -> List[List[int]]:
    return [list(range(start, min(start + chunk_size, trials))) for start in range(0, trials, chunk_size)]


def resolve_workers(workers: Optional[int]) -> int:
    """None 或 0 表示使用全部 CPU"""
    if not workers:
        return os.cpu_count() or 1
    return validate_count(workers, "workers", minimum=1)


def run_trials(
    spec: ExperimentSpec,
    workers: Optional[int] = 1,
    chunk_size: Optional[int] = None,
    quiet: bool = True,
) -> List[TrialRecord]:
    """
    执行全部试验

    Args:
        spec: 实验描述
        workers: 进程数，1 为串行
        chunk_size: 每个任务的试验数，默认按 workers×4 个任务均分
        quiet: 为 False 时输出进度

    Returns:
        按 trial_index 排序的记录
    """
    workers = resolve_workers(workers)
    if chunk_size is None:
        chunk_size = max(1, math.ceil(spec.trials / (workers * 4)))
    chunk_size = validate_count(chunk_size, "chunk_size", minimum=1)

    if not quiet:
        print(f"[实验] {spec.name}: {spec.model.model} n={spec.model.n} p={spec.model.p} "
              f"trials={spec.trials} workers={workers}", file=sys.stderr)

    if workers == 1:
        records = [run_trial(spec, i) for i in range(spec.trials)]
    else:
        chunks = _chunks(spec.trials, chunk_size)
        spec_dict = spec.to_dict()
        records = []
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_run_chunk, (spec_dict, chunk)) for chunk in chunks]
            for done, future in enumerate(as_completed(futures), start=1):
                records.extend(TrialRecord.from_dict(d) for d in future.result())
                if not quiet:
                    print(f"[实验]   块 {done}/{len(chunks)} 完成", file=sys.stderr)

    records.sort(key=lambda r: r.trial_index)
    return records


def summarize_experiment(spec: ExperimentSpec, records: List[TrialRecord]) -> Summary:
    """按实验的主测量量汇总"""
    return summarize(records, primary_metric(spec), theory_value(spec))


def run_experiment(
    spec: ExperimentSpec,
    workers: Optional[int] = 1,
    chunk_size: Optional[int] = None,
    quiet: bool = True,
) -> Tuple[List[TrialRecord], Summary]:
    """
    执行实验并汇总

    不可行试验作为数据保留在记录中，不参与均值。

    Examples:
        >>> from randmatch.graph import ModelSpec
        >>> spec = ExperimentSpec("demo", ModelSpec("complete_bipartite", 1), 3, 7, "perfect_cost")
        >>> records, summary = run_experiment(spec)
        >>> summary.trials_ok
        3
    """
    records = run_trials(spec, workers=workers, chunk_size=chunk_size, quiet=quiet)
    summary = summarize_experiment(spec, records)
    if not quiet:
        if summary.trials_infeasible:
            print(f"[警告] {summary.trials_infeasible}/{summary.trials} 次试验不可行，已从均值中排除", file=sys.stderr)
        print(f"[实验] ✅ {spec.name} 完成", file=sys.stderr)
    return records, summary

