# coding=utf-8
"""
蒙特卡洛实验数据模型

ExperimentSpec 描述一次实验；TrialRecord 是单次试验的测量结果；
Summary 是对某个测量量的汇总，并附带与理论值的比较。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from randmatch.graph.types import BIPARTITE_MODELS, ModelSpec
from randmatch.theory import default_cutoff
from randmatch.utils.errors import InvalidParameterError, OddVertexCountError
from randmatch.utils.validators import (
    parse_float_list,
    validate_count,
    validate_nonnegative,
    validate_positive,
    validate_seed,
)

# 测量量
PERFECT_COST = "perfect_cost"
COST_SEQUENCE = "cost_sequence"
PNR = "pnr"
MEMBERSHIP = "membership"
CONCENTRATION = "concentration"
MAX_EDGE = "max_edge"
DIAMETER = "diameter"

QUANTITIES = (PERFECT_COST, COST_SEQUENCE, PNR, MEMBERSHIP, CONCENTRATION, MAX_EDGE, DIAMETER)

# 只对二部模型有意义的测量量
BIPARTITE_ONLY = (COST_SEQUENCE, PNR, MEMBERSHIP)

# 试验结果
OUTCOME_OK = "ok"
OUTCOME_INFEASIBLE = "infeasible"

DEFAULT_LAMBDA = 0.01
DEFAULT_MU_CONSTANT = 20.0
DEFAULT_THRESHOLD_CONSTANT = 20.0
DEFAULT_EPSILONS = (0.3,)


def _resolve_params(quantity: str, model: ModelSpec, params: Dict[str, Any]) -> Dict[str, Any]:
    """补全默认值并校验测量量所需参数"""
    n = model.n
    resolved: Dict[str, Any] = {}

    if quantity == COST_SEQUENCE:
        resolved["r_max"] = validate_count(params.get("r_max", n), "r_max", minimum=0, maximum=n)

    elif quantity == PNR:
        if "r" not in params:
            raise InvalidParameterError("pnr 实验需要参数 r")
        resolved["r"] = validate_count(params["r"], "r", minimum=0, maximum=n)
        resolved["lambda"] = validate_positive(params.get("lambda", DEFAULT_LAMBDA), "lambda")

    elif quantity == MEMBERSHIP:
        if "r" not in params:
            raise InvalidParameterError("membership 实验需要参数 r")
        resolved["r"] = validate_count(params["r"], "r", minimum=0, maximum=n)

    elif quantity == CONCENTRATION:
        if n < 2:
            raise InvalidParameterError("concentration 实验要求 n ≥ 2（截断点含 log n）")
        resolved["mu_constant"] = validate_positive(
            params.get("mu_constant", DEFAULT_MU_CONSTANT), "mu_constant"
        )
        epsilons = parse_float_list(params.get("epsilons", list(DEFAULT_EPSILONS)), "epsilons")
        resolved["epsilons"] = [validate_nonnegative(e, "epsilon") for e in epsilons]

    elif quantity == MAX_EDGE:
        if n < 2:
            raise InvalidParameterError("max_edge 实验要求 n ≥ 2（阈值含 log n）")
        resolved["threshold_constant"] = validate_positive(
            params.get("threshold_constant", DEFAULT_THRESHOLD_CONSTANT), "threshold_constant"
        )
        resolved["m"] = validate_count(params.get("m", default_cutoff(n)), "m", minimum=0, maximum=n - 1)

    elif quantity == DIAMETER:
        if model.is_bipartite:
            default_r = n - default_cutoff(n)
            resolved["r"] = validate_count(params.get("r", default_r), "r", minimum=0, maximum=n)
        if params.get("k") is not None:
            resolved["k"] = validate_count(params["k"], "k", minimum=1)
        resolved["pair_samples"] = validate_count(params.get("pair_samples", 100), "pair_samples", minimum=1)

    return resolved


@dataclass(frozen=True)
class ExperimentSpec:
    """
    实验描述

    params 在构造时按测量量补全默认值，写入结果文件头的是补全后的值。
    """

    name: str                                       # 实验名称
    model: ModelSpec                                # 随机图模型
    trials: int                                     # 试验次数
    base_seed: int                                  # 64 位基础种子
    quantity: str                                   # 测量量
    params: Dict[str, Any] = field(default_factory=dict)   # 测量量参数

    def __post_init__(self):
        validate_count(self.trials, "trials", minimum=1)
        object.__setattr__(self, "base_seed", validate_seed(self.base_seed, "base_seed"))
        if self.quantity not in QUANTITIES:
            raise InvalidParameterError(
                f"未知测量量 '{self.quantity}'",
                suggestion=f"支持的测量量: {', '.join(QUANTITIES)}",
            )
        if self.quantity in BIPARTITE_ONLY and self.model.model not in BIPARTITE_MODELS:
            raise InvalidParameterError(
                f"测量量 {self.quantity} 只支持二部模型",
                suggestion=f"请使用 {', '.join(BIPARTITE_MODELS)}",
            )
        if not self.model.is_bipartite and self.quantity in (PERFECT_COST, CONCENTRATION, MAX_EDGE, DIAMETER):
            if self.model.n % 2:
                raise OddVertexCountError(self.model.n)
        object.__setattr__(self, "params", _resolve_params(self.quantity, self.model, dict(self.params)))

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "name": self.name,
            "model": self.model.to_dict(),
            "trials": self.trials,
            "base_seed": self.base_seed,
            "quantity": self.quantity,
            "params": dict(self.params),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentSpec":
        """从字典创建"""
        model = data.get("model", {})
        return cls(
            name=data.get("name", ""),
            model=model if isinstance(model, ModelSpec) else ModelSpec.from_dict(model),
            trials=data.get("trials", 0),
            base_seed=data.get("base_seed", 0),
            quantity=data.get("quantity", ""),
            params=data.get("params", {}),
        )


@dataclass
class TrialRecord:
    """单次试验结果；不可行的试验只记录 failed_r"""

    trial_index: int                                        # 试验编号
    stream_id: int                                          # 图生成所用的流编号
    outcome: str = OUTCOME_OK                               # ok / infeasible
    scalars: Dict[str, float] = field(default_factory=dict)     # 测量值

    @property
    def ok(self) -> bool:
        return self.outcome == OUTCOME_OK

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "trial_index": self.trial_index,
            "stream_id": self.stream_id,
            "outcome": self.outcome,
            "scalars": dict(self.scalars),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TrialRecord":
        """从字典创建"""
        return cls(
            trial_index=int(data["trial_index"]),
            stream_id=int(data["stream_id"]),
            outcome=data.get("outcome", OUTCOME_OK),
            scalars={k: float(v) for k, v in data.get("scalars", {}).items()},
        )


@dataclass
class Comparison:
    """与理论值的比较"""

    theory_value: float
    relative_deviation: float               # |mean − theory| / |theory|
    z_score: Optional[float] = None         # (mean − theory) / SE，SE 为 0 时为 None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theory_value": self.theory_value,
            "relative_deviation": self.relative_deviation,
            "z_score": self.z_score,
        }


@dataclass
class Summary:
    """
    单个测量量的汇总

    均值与方差只统计 ok 试验；variance 为样本方差（ddof=1），
    standard_error = sqrt(variance / trials_ok)。ok 试验不足 2 次时方差记为 0。
    """

    metric: str                                             # 被汇总的测量量
    trials: int = 0
    trials_ok: int = 0
    trials_infeasible: int = 0
    mean: Optional[float] = None
    variance: Optional[float] = None
    standard_error: Optional[float] = None
    quantiles: Dict[str, float] = field(default_factory=dict)   # "p01" .. "p99"
    comparison: Optional[Comparison] = None
    others: Dict[str, Dict[str, float]] = field(default_factory=dict)  # 其余测量量的 mean / se / count

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "metric": self.metric,
            "trials": self.trials,
            "trials_ok": self.trials_ok,
            "trials_infeasible": self.trials_infeasible,
            "mean": self.mean,
            "variance": self.variance,
            "standard_error": self.standard_error,
            "quantiles": dict(self.quantiles),
            "comparison": self.comparison.to_dict() if self.comparison else None,
            "others": {k: dict(v) for k, v in self.others.items()},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Summary":
        """从字典创建"""
        comparison = data.get("comparison")
        return cls(
            metric=data.get("metric", ""),
            trials=data.get("trials", 0),
            trials_ok=data.get("trials_ok", 0),
            trials_infeasible=data.get("trials_infeasible", 0),
            mean=data.get("mean"),
            variance=data.get("variance"),
            standard_error=data.get("standard_error"),
            quantiles=dict(data.get("quantiles", {})),
            comparison=Comparison(**comparison) if comparison else None,
            others={k: dict(v) for k, v in data.get("others", {}).items()},
        )


@dataclass
class ExperimentResult:
    """一次实验的全部产出"""

    spec: ExperimentSpec
    records: List[TrialRecord]
    summary: Summary
    analysis: Dict[str, Any] = field(default_factory=dict)     # 估计量专用结果

    @property
    def theory_line(self) -> str:
        """理论比较的单行描述"""
        s = self.summary
        if s.mean is None:
            return f"{s.metric}: 无可行试验"
        line = f"{s.metric}: mean={s.mean:.7f} ± {s.standard_error:.2e} (ok={s.trials_ok}/{s.trials})"
        if s.comparison is not None:
            c = s.comparison
            z = "n/a" if c.z_score is None else f"{c.z_score:+.2f}"
            line += f", theory={c.theory_value:.7f}, rel_dev={c.relative_deviation:.4f}, z={z}"
        return line

