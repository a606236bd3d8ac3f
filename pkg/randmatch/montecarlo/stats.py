# coding=utf-8
"""
汇总统计

所有聚合先对数值排序再求和（math.fsum），因此与试验记录的顺序无关。
"""

import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from randmatch.montecarlo.spec import Comparison, Summary, TrialRecord

QUANTILE_LEVELS = (1, 5, 25, 50, 75, 95, 99)


def sample_stats(values: Iterable[float]) -> Tuple[Optional[float], Optional[float], Optional[float]]:
    """
    样本均值、样本方差（ddof=1）与标准误

    Returns:
        (mean, variance, standard_error)；空样本全部为 None，单个样本方差为 0

    Examples:
        >>> sample_stats([1.0, 3.0])
        (2.0, 2.0, 1.0)
    """
    xs = sorted(values)
    k = len(xs)
    if k == 0:
        return None, None, None
    mean = math.fsum(xs) / k
    if k < 2:
        return mean, 0.0, 0.0
    variance = math.fsum(sorted((x - mean) ** 2 for x in xs)) / (k - 1)
    return mean, variance, math.sqrt(variance / k)


def quantiles(values: Sequence[float]) -> Dict[str, float]:
    """p01 .. p99 分位数（numpy 线性插值）"""
    if not values:
        return {}
    arr = np.sort(np.asarray(values, dtype=np.float64))
    qs = np.percentile(arr, QUANTILE_LEVELS)
    return {f"p{level:02d}": float(q) for level, q in zip(QUANTILE_LEVELS, qs)}


def metric_values(records: Iterable[TrialRecord], metric: str) -> List[float]:
    """ok 试验中含该测量量的取值"""
    return [r.scalars[metric] for r in records if r.ok and metric in r.scalars]


def compare(mean: Optional[float], standard_error: Optional[float], theory_value: Optional[float]) -> Optional[Comparison]:
    """与理论值比较；mean 或 theory 缺失时返回 None"""
    if mean is None or theory_value is None:
        return None
    deviation = abs(mean - theory_value)
    relative = deviation / abs(theory_value) if theory_value != 0 else math.inf
    z_score = (mean - theory_value) / standard_error if standard_error else None
    return Comparison(theory_value=theory_value, relative_deviation=relative, z_score=z_score)


def summarize(
    records: Sequence[TrialRecord],
    metric: str,
    theory_value: Optional[float] = None,
) -> Summary:
    """
    汇总一个测量量

    Args:
        records: 试验记录（任意顺序）
        metric: 主测量量名
        theory_value: 理论值，None 表示不做比较

    Returns:
        Summary；其余测量量的 mean/se/count 放在 others 中
    """
    ok = [r for r in records if r.ok]
    values = metric_values(ok, metric)
    mean, variance, se = sample_stats(values)

    others: Dict[str, Dict[str, float]] = {}
    names = sorted({name for r in ok for name in r.scalars if name != metric})
    for name in names:
        xs = metric_values(ok, name)
        m, _, s = sample_stats(xs)
        others[name] = {"mean": m, "standard_error": s, "count": len(xs)}

    return Summary(
        metric=metric,
        trials=len(records),
        trials_ok=len(ok),
        trials_infeasible=len(records) - len(ok),
        mean=mean,
        variance=variance,
        standard_error=se,
        quantiles=quantiles(values),
        comparison=compare(mean, se, theory_value),
        others=others,
    )
