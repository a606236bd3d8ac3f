# coding=utf-8
"""
蒙特卡洛实验模块

- spec: 实验描述、试验记录与汇总的数据模型
- trials: 单次试验与各测量量
- runner: 串行/并行执行与汇总
- estimators: P(n, r)、B_r 均匀性、集中性、增量曲线
- catalog: 预设实验目录
"""

from randmatch.montecarlo.spec import (
    QUANTITIES,
    PERFECT_COST,
    COST_SEQUENCE,
    PNR,
    MEMBERSHIP,
    CONCENTRATION,
    MAX_EDGE,
    DIAMETER,
    OUTCOME_OK,
    OUTCOME_INFEASIBLE,
    ExperimentSpec,
    TrialRecord,
    Comparison,
    Summary,
    ExperimentResult,
)
from randmatch.montecarlo.trials import run_trial
from randmatch.montecarlo.stats import sample_stats, summarize
from randmatch.montecarlo.runner import (
    primary_metric,
    theory_value,
    run_trials,
    run_experiment,
    summarize_experiment,
)
from randmatch.montecarlo.estimators import (
    PnrEstimate,
    MembershipResult,
    ConcentrationResult,
    IncrementRow,
    IncrementProfile,
    estimate_pnr,
    membership_frequency,
    concentration_tail,
    increment_profile,
    pnr_from_records,
    membership_from_records,
    concentration_from_records,
    profile_from_records,
    analyze,
)
from randmatch.montecarlo.catalog import CATALOG, available_experiments, build_experiment, execute

__all__ = [
    "QUANTITIES",
    "PERFECT_COST",
    "COST_SEQUENCE",
    "PNR",
    "MEMBERSHIP",
    "CONCENTRATION",
    "MAX_EDGE",
    "DIAMETER",
    "OUTCOME_OK",
    "OUTCOME_INFEASIBLE",
    "ExperimentSpec",
    "TrialRecord",
    "Comparison",
    "Summary",
    "ExperimentResult",
    "run_trial",
    "sample_stats",
    "summarize",
    "primary_metric",
    "theory_value",
    "run_trials",
    "run_experiment",
    "summarize_experiment",
    "PnrEstimate",
    "MembershipResult",
    "ConcentrationResult",
    "IncrementRow",
    "IncrementProfile",
    "estimate_pnr",
    "membership_frequency",
    "concentration_tail",
    "increment_profile",
    "pnr_from_records",
    "membership_from_records",
    "concentration_from_records",
    "profile_from_records",
    "analyze",
    "CATALOG",
    "available_experiments",
    "build_experiment",
    "execute",
]
