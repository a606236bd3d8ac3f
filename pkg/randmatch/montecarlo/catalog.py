# coding=utf-8
"""
实验目录

每个名称对应一个预设实验，命令行参数可以覆盖其中的 n、p、trials 等字段。
"""

import math
from typing import Any, Dict, Optional

from randmatch.graph.types import COMPLETE, COMPLETE_BIPARTITE, GNNP, GNP, ModelSpec
from randmatch.montecarlo.estimators import analyze
from randmatch.montecarlo.runner import run_trials, summarize_experiment
from randmatch.montecarlo.spec import (
    CONCENTRATION,
    COST_SEQUENCE,
    DIAMETER,
    MAX_EDGE,
    MEMBERSHIP,
    PERFECT_COST,
    PNR,
    ExperimentResult,
    ExperimentSpec,
)
from randmatch.utils.errors import UnknownExperimentError


def _diameter_p(n: int) -> float:
    # np ≈ 3(log n)²
    return min(1.0, 3.0 * math.log(n) ** 2 / n)


# name -> (模型, n, p, trials, 测量量, 参数)
CATALOG: Dict[str, Dict[str, Any]] = {
    "theorem1": {"model": GNNP, "n": 400, "p": 0.25, "trials": 200, "quantity": PERFECT_COST, "params": {}},
    "theorem2": {"model": GNP, "n": 400, "p": 0.25, "trials": 200, "quantity": PERFECT_COST, "params": {}},
    "parisi": {"model": COMPLETE_BIPARTITE, "n": 10, "p": 1.0, "trials": 20000, "quantity": PERFECT_COST, "params": {}},
    "pnr": {"model": COMPLETE_BIPARTITE, "n": 20, "p": 1.0, "trials": 1000000, "quantity": PNR,
            "params": {"r": 10, "lambda": 0.01}},
    "increments": {"model": COMPLETE_BIPARTITE, "n": 10, "p": 1.0, "trials": 20000, "quantity": COST_SEQUENCE,
                   "params": {}},
    "membership": {"model": COMPLETE_BIPARTITE, "n": 6, "p": 1.0, "trials": 10000, "quantity": MEMBERSHIP,
                   "params": {"r": 3}},
    "concentration": {"model": GNNP, "n": 400, "p": 0.25, "trials": 300, "quantity": CONCENTRATION,
                      "params": {"epsilons": [0.3], "mu_constant": 20.0}},
    "maxedge": {"model": GNNP, "n": 400, "p": 0.25, "trials": 100, "quantity": MAX_EDGE,
                "params": {"threshold_constant": 20.0}},
    "diameter": {"model": GNNP, "n": 300, "p": None, "trials": 20, "quantity": DIAMETER,
                 "params": {"pair_samples": 50}},
}


def available_experiments():
    return sorted(CATALOG)


def _adjust_model(model: str, p: float) -> str:
    """完全图模型在 p < 1 时换成对应的稀疏模型"""
    if p < 1.0:
        if model == COMPLETE_BIPARTITE:
            return GNNP
        if model == COMPLETE:
            return GNP
    return model


def build_experiment(
    name: str,
    base_seed: int = 0,
    n: Optional[int] = None,
    p: Optional[float] = None,
    trials: Optional[int] = None,
    model: Optional[str] = None,
    params: Optional[Dict[str, Any]] = None,
) -> ExperimentSpec:
    """
    由目录名称和覆盖参数构造 ExperimentSpec

    Raises:
        UnknownExperimentError: 名称不在目录中
        InvalidParameterError: 覆盖参数无效
    """
    if name not in CATALOG:
        raise UnknownExperimentError(name, available_experiments())
    entry = CATALOG[name]

    size = entry["n"] if n is None else n
    merged = dict(entry["params"])
    if params:
        merged.update({k: v for k, v in params.items() if v is not None})

    if p is None:
        p = entry["p"]
    if p is None:
        p = _diameter_p(int(size))
    chosen = model or _adjust_model(entry["model"], float(p))

    return ExperimentSpec(
        name=name,
        model=ModelSpec(chosen, size, p),
        trials=entry["trials"] if trials is None else trials,
        base_seed=base_seed,
        quantity=entry["quantity"],
        params=merged,
    )


def execute(
    spec: ExperimentSpec,
    workers: Optional[int] = 1,
    quiet: bool = True,
    chunk_size: Optional[int] = None,
) -> ExperimentResult:
    """
    执行实验，生成记录、汇总与估计量专用结果

    Examples:
        >>> spec = build_experiment("parisi", base_seed=1, n=2, trials=5)
        >>> execute(spec).summary.trials
        5
    """
    records = run_trials(spec, workers=workers, chunk_size=chunk_size, quiet=quiet)
    summary = summarize_experiment(spec, records)
    return ExperimentResult(spec=spec, records=records, summary=summary, analysis=analyze(spec, records))
