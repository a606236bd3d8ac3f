# coding=utf-8
"""
估计量

每个估计量都有两层：xxx_from_records 只读取试验记录做计算（可用于已保存的结果），
外层函数负责构造 ExperimentSpec 并执行试验。
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from scipy import stats as sps

from randmatch.graph.types import COMPLETE_BIPARTITE, GNNP, ModelSpec
from randmatch.montecarlo.runner import run_trials
from randmatch.montecarlo.spec import (
    CONCENTRATION,
    COST_SEQUENCE,
    DEFAULT_LAMBDA,
    DIAMETER,
    MAX_EDGE,
    MEMBERSHIP,
    PNR,
    ExperimentSpec,
    TrialRecord,
)
from randmatch.montecarlo.stats import metric_values, sample_stats
from randmatch.theory import expected_increment, limit_value, pnr_finite_lambda, pnr_theory
from randmatch.utils.errors import InvalidParameterError
from randmatch.utils.validators import parse_float_list, validate_nonnegative


def bipartite_model_for(p: float) -> str:
    """p = 1 用完全二部图，否则用 G_{n,n,p}"""
    return COMPLETE_BIPARTITE if p >= 1.0 else GNNP


# ==================== P(n, r) ====================

@dataclass
class PnrEstimate:
    """
    P(n, r) 的特殊顶点估计

    estimate = hits / (trials_ok·λ)，相对 λ→0 极限的偏差为 O(λ)。
    """

    model: str
    n: int
    r: int
    p: float
    lam: float
    trials: int
    trials_ok: int
    hits: int
    estimate: Optional[float]                   # 无可行试验时为 None
    standard_error: Optional[float]
    theory: float                               # (1/p)(H_n − H_{n−r})
    theory_finite_lambda: float                 # 有限 λ 的完全二部图精确值

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "model": self.model,
            "n": self.n,
            "r": self.r,
            "p": self.p,
            "lambda": self.lam,
            "trials": self.trials,
            "trials_ok": self.trials_ok,
            "hits": self.hits,
            "estimate": self.estimate,
            "standard_error": self.standard_error,
            "theory": self.theory,
            "theory_finite_lambda": self.theory_finite_lambda,
        }


def pnr_from_records(spec: ExperimentSpec, records: Sequence[TrialRecord]) -> PnrEstimate:
    if spec.quantity != PNR:
        raise InvalidParameterError(f"需要 pnr 实验的记录，当前为 {spec.quantity}")
    n, p = spec.model.n, spec.model.p
    r, lam = spec.params["r"], spec.params["lambda"]
    hits_list = metric_values(records, "hit")
    ok = len(hits_list)
    hits = int(round(math.fsum(hits_list)))

    estimate: Optional[float] = None
    se: Optional[float] = None
    if r == 0:
        estimate, se = 0.0, 0.0
    elif ok:
        phat = hits / ok
        estimate = phat / lam
        se = math.sqrt(phat * (1.0 - phat) / ok) / lam

    return PnrEstimate(
        model=spec.model.model,
        n=n,
        r=r,
        p=p,
        lam=lam,
        trials=len(records),
        trials_ok=ok,
        hits=hits,
        estimate=estimate,
        standard_error=se,
        theory=pnr_theory(n, r, p),
        theory_finite_lambda=pnr_finite_lambda(n, r, p, lam),
    )


def estimate_pnr(
    n: int,
    r: int,
    p: float = 1.0,
    lam: float = DEFAULT_LAMBDA,
    trials: int = 1000,
    base_seed: int = 0,
    workers: Optional[int] = 1,
    quiet: bool = True,
) -> PnrEstimate:
    """
    估计 P(n, r) = lim_{λ→0} (1/λ)·Pr(b_{n+1} ∈ B_r^*)

    Args:
        n: 每侧顶点数
        r: 匹配步数，0 ≤ r ≤ n
        p: 边概率，1 时使用完全二部图
        lam: 特殊顶点边的指数速率
        trials: 试验次数
        base_seed: 基础种子

    Returns:
        PnrEstimate
    """
    spec = ExperimentSpec(
        name="pnr",
        model=ModelSpec(bipartite_model_for(p), n, p),
        trials=trials,
        base_seed=base_seed,
        quantity=PNR,
        params={"r": r, "lambda": lam},
    )
    records = run_trials(spec, workers=workers, quiet=quiet)
    return pnr_from_records(spec, records)


# ==================== B_r 的均匀性 ====================

@dataclass
class MembershipResult:
    """
    各顶点 b_j ∈ B_r 的频率

    若 B_r 是均匀随机的 r-子集，计数向量的协方差为 T·q(1−q)·(n/(n−1))·(I − J/n)，
    因此 chi_square = ((n−1)/n)·Σ (O_j − Tq)²/(Tq(1−q)) 服从 n−1 自由度的 χ² 分布。
    """

    n: int
    r: int
    trials_ok: int
    expected: float                                         # q = r/n
    frequencies: List[float] = field(default_factory=list)
    standard_errors: List[float] = field(default_factory=list)  # sqrt(q(1−q)/T)
    chi_square: float = 0.0
    dof: int = 0
    p_value: float = 1.0

    def passes(self, significance: float = 0.001) -> bool:
        return self.p_value >= significance

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "n": self.n,
            "r": self.r,
            "trials_ok": self.trials_ok,
            "expected": self.expected,
            "frequencies": list(self.frequencies),
            "standard_errors": list(self.standard_errors),
            "chi_square": self.chi_square,
            "dof": self.dof,
            "p_value": self.p_value,
        }


def membership_from_records(spec: ExperimentSpec, records: Sequence[TrialRecord]) -> MembershipResult:
    if spec.quantity != MEMBERSHIP:
        raise InvalidParameterError(f"需要 membership 实验的记录，当前为 {spec.quantity}")
    n, r = spec.model.n, spec.params["r"]
    q = r / n
    ok = [rec for rec in records if rec.ok]
    total = len(ok)
    counts = [math.fsum(rec.scalars[f"member_{j}"] for rec in ok) for j in range(n)]

    result = MembershipResult(n=n, r=r, trials_ok=total, expected=q, dof=max(n - 1, 0))
    if total == 0:
        return result
    result.frequencies = [c / total for c in counts]
    result.standard_errors = [math.sqrt(q * (1.0 - q) / total)] * n
    if 0 < r < n:
        scale = total * q * (1.0 - q)
        result.chi_square = (n - 1) / n * math.fsum((c - total * q) ** 2 for c in counts) / scale
        result.p_value = float(sps.chi2.sf(result.chi_square, n - 1))
    return result


def membership_frequency(
    n: int,
    r: int,
    p: float = 1.0,
    trials: int = 1000,
    base_seed: int = 0,
    workers: Optional[int] = 1,
    quiet: bool = True,
) -> MembershipResult:
    """估计每个 b_j 属于 B_r 的频率并做均匀性检验"""
    spec = ExperimentSpec(
        name="membership",
        model=ModelSpec(bipartite_model_for(p), n, p),
        trials=trials,
        base_seed=base_seed,
        quantity=MEMBERSHIP,
        params={"r": r},
    )
    return membership_from_records(spec, run_trials(spec, workers=workers, quiet=quiet))


# ==================== 集中性 ====================

@dataclass
class ConcentrationResult:
    """|p·C − 极限| ≥ ε 的经验频率，以及截断代价的同一统计"""

    model: str
    n: int
    p: float
    centre: float                                   # π²/6 或 π²/12
    mu: float                                       # 截断点 c·log n/(np)
    trials_ok: int
    rows: List[Dict[str, float]] = field(default_factory=list)     # epsilon / exceedance / truncated_exceedance
    truncation_differs_frequency: Optional[float] = None           # Ĉ ≠ C 的频率

    def exceedance(self, epsilon: float) -> Optional[float]:
        for row in self.rows:
            if row["epsilon"] == epsilon:
                return row["exceedance"]
        return None

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "model": self.model,
            "n": self.n,
            "p": self.p,
            "centre": self.centre,
            "mu": self.mu,
            "trials_ok": self.trials_ok,
            "rows": [dict(r) for r in self.rows],
            "truncation_differs_frequency": self.truncation_differs_frequency,
        }


def _exceedance(values: List[float], centre: float, epsilon: float) -> Optional[float]:
    if not values:
        return None
    return sum(1 for v in values if abs(v - centre) >= epsilon) / len(values)


def concentration_from_records(
    spec: ExperimentSpec,
    records: Sequence[TrialRecord],
    epsilons: Optional[Sequence[float]] = None,
) -> ConcentrationResult:
    if spec.quantity != CONCENTRATION:
        raise InvalidParameterError(f"需要 concentration 实验的记录，当前为 {spec.quantity}")
    n, p = spec.model.n, spec.model.p
    if epsilons is None:
        epsilons = spec.params["epsilons"]
    epsilons = [validate_nonnegative(e, "epsilon") for e in parse_float_list(list(epsilons), "epsilons")]

    centre = p * limit_value(spec.model.model, p)
    values = metric_values(records, "p_cost")
    truncated = metric_values(records, "p_truncated_cost")
    differs = metric_values(records, "truncated_differs")

    result = ConcentrationResult(
        model=spec.model.model,
        n=n,
        p=p,
        centre=centre,
        mu=spec.params["mu_constant"] * math.log(n) / (n * p),
        trials_ok=len(values),
        truncation_differs_frequency=(math.fsum(differs) / len(differs)) if differs else None,
    )
    for eps in epsilons:
        result.rows.append({
            "epsilon": eps,
            "exceedance": _exceedance(values, centre, eps),
            "truncated_exceedance": _exceedance(truncated, centre, eps),
        })
    return result


def concentration_tail(
    spec: ExperimentSpec,
    epsilon_list: Optional[Sequence[float]] = None,
    workers: Optional[int] = 1,
    quiet: bool = True,
) -> ConcentrationResult:
    """
    执行 concentration 实验并统计各 ε 的超出频率

    Raises:
        InvalidParameterError: spec.quantity 不是 concentration
    """
    if spec.quantity != CONCENTRATION:
        raise InvalidParameterError(f"concentration_tail 需要 concentration 实验，当前为 {spec.quantity}")
    records = run_trials(spec, workers=workers, quiet=quiet)
    return concentration_from_records(spec, records, epsilon_list)


# ==================== 增量曲线 ====================

@dataclass
class IncrementRow:
    """第 r 步增量的经验均值与理论值"""

    r: int
    empirical: Optional[float]
    standard_error: Optional[float]
    theory: float
    z_score: Optional[float]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "empirical": self.empirical,
            "standard_error": self.standard_error,
            "theory": self.theory,
            "z_score": self.z_score,
        }


@dataclass
class IncrementProfile:
    """逐步增量与其逐试验望远镜求和"""

    model: str
    n: int
    p: float
    trials_ok: int
    rows: List[IncrementRow] = field(default_factory=list)
    total_mean: Optional[float] = None          # Σ_r 增量的逐试验均值
    total_standard_error: Optional[float] = None
    total_theory: float = 0.0                   # Σ_r expected_increment

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "model": self.model,
            "n": self.n,
            "p": self.p,
            "trials_ok": self.trials_ok,
            "rows": [row.to_dict() for row in self.rows],
            "total_mean": self.total_mean,
            "total_standard_error": self.total_standard_error,
            "total_theory": self.total_theory,
        }


def profile_from_records(spec: ExperimentSpec, records: Sequence[TrialRecord]) -> IncrementProfile:
    if spec.quantity != COST_SEQUENCE:
        raise InvalidParameterError(f"需要 cost_sequence 实验的记录，当前为 {spec.quantity}")
    n, p = spec.model.n, spec.model.p
    r_max = spec.params["r_max"]
    ok = [rec for rec in records if rec.ok]

    profile = IncrementProfile(model=spec.model.model, n=n, p=p, trials_ok=len(ok))
    for r in range(1, r_max + 1):
        mean, _, se = sample_stats(metric_values(ok, f"inc_{r}"))
        theory = expected_increment(n, r, p)
        z = (mean - theory) / se if mean is not None and se else None
        profile.rows.append(IncrementRow(r=r, empirical=mean, standard_error=se, theory=theory, z_score=z))

    totals = [math.fsum(rec.scalars[f"inc_{r}"] for r in range(1, r_max + 1)) for rec in ok]
    profile.total_mean, _, profile.total_standard_error = sample_stats(totals)
    profile.total_theory = math.fsum(row.theory for row in profile.rows)
    return profile


def increment_profile(
    n: int,
    p: float = 1.0,
    trials: int = 1000,
    base_seed: int = 0,
    workers: Optional[int] = 1,
    quiet: bool = True,
) -> IncrementProfile:
    """
    C(n, r) − C(n, r−1) 的蒙特卡洛均值与 (1/(rp))(H_n − H_{n−r}) 的比较

    p = 1 时 total_theory 等于 parisi_sum(n)。
    """
    spec = ExperimentSpec(
        name="increments",
        model=ModelSpec(bipartite_model_for(p), n, p),
        trials=trials,
        base_seed=base_seed,
        quantity=COST_SEQUENCE,
        params={"r_max": n},
    )
    return profile_from_records(spec, run_trials(spec, workers=workers, quiet=quiet))


# ==================== 诊断类汇总 ====================

def fraction_from_records(records: Sequence[TrialRecord], metric: str) -> Optional[float]:
    """0/1 测量量在 ok 试验中的比例"""
    values = metric_values(records, metric)
    if not values:
        return None
    return math.fsum(values) / len(values)


def analyze(spec: ExperimentSpec, records: Sequence[TrialRecord]) -> Dict[str, Any]:
    """按测量量生成估计量专用结果，写入 summary 文档的 analysis 字段"""
    if spec.quantity == PNR:
        return pnr_from_records(spec, records).to_dict()
    if spec.quantity == MEMBERSHIP:
        return membership_from_records(spec, records).to_dict()
    if spec.quantity == CONCENTRATION:
        return concentration_from_records(spec, records).to_dict()
    if spec.quantity == COST_SEQUENCE:
        return profile_from_records(spec, records).to_dict()
    if spec.quantity == MAX_EDGE:
        exceeded = fraction_from_records(records, "exceeds_threshold")
        return {
            "threshold_constant": spec.params["threshold_constant"],
            "within_threshold_fraction": None if exceeded is None else 1.0 - exceeded,
        }
    if spec.quantity == DIAMETER:
        return {"within_bound_fraction": fraction_from_records(records, "within_bound")}
    return {}
