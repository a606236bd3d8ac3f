# coding=utf-8
"""
理论参考值

调和数、Parisi 部分和、增量期望、双重和、一般图的 L/U 界以及 π²/12 积分。
调和型求和一律按下标升序；需要 O(n) 求值的双重和使用前缀调和表。
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate

from randmatch.graph.types import BIPARTITE_MODELS, COMPLETE_BIPARTITE, MODELS
from randmatch.utils.errors import InvalidParameterError, NumericError
from randmatch.utils.validators import validate_count, validate_positive, validate_probability

EULER_GAMMA = 0.5772156649015329
ZETA2 = math.pi ** 2 / 6            # 1.6449340668482264
HALF_ZETA2 = math.pi ** 2 / 12      # 0.8224670334241132


@dataclass(frozen=True)
class TheoryParams:
    """理论计算参数"""

    n: int                      # 顶点数
    r: int = 0                  # 匹配步数
    p: float = 1.0              # 边概率
    m: Optional[int] = None     # 截断点，默认 ⌊n/(log n)²⌋

    def __post_init__(self):
        validate_count(self.n, "n", minimum=1)
        validate_count(self.r, "r", minimum=0, maximum=self.n)
        validate_probability(self.p)
        if self.m is None:
            object.__setattr__(self, "m", default_cutoff(self.n))
        validate_count(self.m, "m", minimum=0, maximum=self.n - 1)


# ==================== 调和数 ====================

def harmonic(n: int) -> float:
    """
    H_n = Σ_{i=1}^n 1/i，harmonic(0) = 0

    Examples:
        >>> harmonic(2)
        1.5
    """
    n = validate_count(n, "n", minimum=0)
    if n == 0:
        return 0.0
    return math.fsum(1.0 / np.arange(1, n + 1, dtype=np.float64))


def harmonic_table(n: int) -> np.ndarray:
    """前缀调和表 H[0..n]，H[0] = 0"""
    n = validate_count(n, "n", minimum=0)
    table = np.zeros(n + 1)
    if n:
        table[1:] = np.cumsum(1.0 / np.arange(1, n + 1, dtype=np.float64))
    return table


def harmonic_asymptotic(n: int) -> float:
    """
    log n + γ + 1/(2n)，与 H_n 相差 O(n^{-2})

    Examples:
        >>> round(harmonic_asymptotic(1), 10)
        1.0772156649
    """
    n = validate_count(n, "n", minimum=1)
    return math.log(n) + EULER_GAMMA + 1.0 / (2 * n)


def parisi_sum(n: int) -> float:
    """Σ_{k=1}^n 1/k²"""
    n = validate_count(n, "n", minimum=1)
    k = np.arange(1, n + 1, dtype=np.float64)
    return math.fsum(1.0 / (k * k))


def _tail_harmonic(n: int, r: int) -> float:
    """H_n − H_{n−r} = Σ_{i=0}^{r−1} 1/(n−i)"""
    if r == 0:
        return 0.0
    return math.fsum(1.0 / np.arange(n - r + 1, n + 1, dtype=np.float64))


# ==================== 增量与 P(n, r) ====================

def expected_increment(n: int, r: int, p: float = 1.0) -> float:
    """
    E[C(n,r) − C(n,r−1)] ≈ (1/(r·p))·(H_n − H_{n−r})

    Examples:
        >>> expected_increment(5, 1, 1.0)
        0.2
    """
    n = validate_count(n, "n", minimum=1)
    r = validate_count(r, "r", minimum=1, maximum=n)
    p = validate_probability(p)
    return _tail_harmonic(n, r) / (r * p)


def pnr_theory(n: int, r: int, p: float = 1.0) -> float:
    """P(n, r) = (1/p)(1/n + 1/(n−1) + … + 1/(n−r+1))，r = 0 时为 0"""
    n = validate_count(n, "n", minimum=1)
    r = validate_count(r, "r", minimum=0, maximum=n)
    p = validate_probability(p)
    return _tail_harmonic(n, r) / p


def pnr_finite_lambda(n: int, r: int, p: float, lam: float) -> float:
    """
    有限 λ 下的 (1/λ)·Pr(b_{n+1} ∈ B_r^*)（完全二部图情形精确）

    第 j+1 步特殊顶点被选中的条件概率为 λ/(p(n−j)+λ)，因此
    Pr = 1 − Π_{j<r} p(n−j)/(p(n−j)+λ)。λ→0 时趋于 pnr_theory。
    """
    n = validate_count(n, "n", minimum=1)
    r = validate_count(r, "r", minimum=0, maximum=n)
    p = validate_probability(p)
    lam = validate_positive(lam, "lambda")
    if r == 0:
        return 0.0
    nu = p * (n - np.arange(r, dtype=np.float64))
    log_miss = math.fsum(np.log1p(-lam / (nu + lam)))
    return -math.expm1(log_miss) / lam


def step_hit_probability(n: int, r: int, p: float, lam: float) -> float:
    """已知前 r−1 步未选中特殊顶点时，第 r 步选中它的概率 λ/(p(n−r+1)+λ)"""
    n = validate_count(n, "n", minimum=1)
    r = validate_count(r, "r", minimum=1, maximum=n)
    p = validate_probability(p)
    lam = validate_positive(lam, "lambda")
    return lam / (p * (n - r + 1) + lam)


# ==================== 双重和与截断 ====================

def default_cutoff(n: int) -> int:
    """
    默认截断 m = ⌊n/(log n)²⌋，并保证 0 ≤ m < n

    Examples:
        >>> default_cutoff(1)
        0
        >>> default_cutoff(300)
        9
    """
    n = validate_count(n, "n", minimum=1)
    if n < 3:
        return 0
    return min(n - 1, int(math.floor(n / math.log(n) ** 2)))


def double_sum(n: int, m: Optional[int] = None) -> float:
    """
    Σ_{r=1}^{n−m} (H_n − H_{n−r})/r，O(n) 求值

    Examples:
        >>> double_sum(1, 0)
        1.0
        >>> double_sum(2, 0)
        1.25
    """
    n = validate_count(n, "n", minimum=1)
    m = default_cutoff(n) if m is None else validate_count(m, "m", minimum=0, maximum=n - 1)
    table = harmonic_table(n)
    r = np.arange(1, n - m + 1)
    return math.fsum((table[n] - table[n - r]) / r)


def lower_L(n: int, r: int) -> float:
    """L(n, r) = Σ_{s=1}^{2r} 1/(n−s+1)"""
    n = validate_count(n, "n", minimum=0)
    r = validate_count(r, "r", minimum=0)
    if 2 * r > n:
        raise InvalidParameterError(f"L(n, r) 要求 2r ≤ n，当前 n={n}, r={r}")
    return _tail_harmonic(n, 2 * r)


def upper_U(n: int, r: int) -> float:
    """U(n, r) = Σ_{s=1}^{r} 2/(n−2s+1)"""
    n = validate_count(n, "n", minimum=0)
    r = validate_count(r, "r", minimum=0)
    if 2 * r > n:
        raise InvalidParameterError(f"U(n, r) 要求 2r ≤ n，当前 n={n}, r={r}")
    if r == 0:
        return 0.0
    s = np.arange(1, r + 1, dtype=np.float64)
    return math.fsum(2.0 / (n - 2 * s + 1))


def general_bound_sum(n: int, m: int = 0, upper: bool = False) -> float:
    """
    一般图代价的界：Σ_{r=1}^{K} L(n−r+1, K−r+1)/(n−r+1)，K = ⌊(n−m)/2⌋

    upper=True 时用 U 代替 L。两者在 n→∞ 时都趋于 π²/12。
    """
    n = validate_count(n, "n", minimum=1)
    m = validate_count(m, "m", minimum=0, maximum=n - 1)
    k = (n - m) // 2
    if k == 0:
        return 0.0
    r = np.arange(1, k + 1)
    big_n = n - r + 1
    big_r = k - r + 1
    if not upper:
        table = harmonic_table(n)
        values = (table[big_n] - table[big_n - 2 * big_r]) / big_n
        return math.fsum(values)
    # U(N, R) = 2·Σ_{s=1}^{R} 1/(N−2s+1)，按奇偶拆成两张前缀表
    odd_prefix, even_prefix = _parity_prefix(n)
    top = big_n - 1
    bottom = big_n - 2 * big_r + 1
    spans = np.where(
        top % 2 == 1,
        odd_prefix[top] - odd_prefix[bottom - 1],
        even_prefix[top] - even_prefix[bottom - 1],
    )
    return math.fsum(2.0 * spans / big_n)


def _parity_prefix(n: int):
    # odd_prefix[j] = Σ_{i ≤ j, i 奇} 1/i；even_prefix 同理
    inv = np.zeros(n + 1)
    inv[1:] = 1.0 / np.arange(1, n + 1, dtype=np.float64)
    odd = inv.copy()
    odd[0::2] = 0.0
    even = inv.copy()
    even[1::2] = 0.0
    return np.cumsum(odd), np.cumsum(even)


# ==================== π²/12 积分 ====================

def mlim_integrand(alpha: float) -> float:
    """(1/(1−α))·log((1−α)/α)，α ∈ (0, 1/2]"""
    return math.log((1.0 - alpha) / alpha) / (1.0 - alpha)


def _substituted_integrand(y: float) -> float:
    # y/(e^y + 1) 写成 y·e^{-y}/(1 + e^{-y}) 避免溢出
    e = math.exp(-y)
    return y * e / (1.0 + e)


def mlim_integral(tolerance: float = 1e-8, method: str = "direct") -> float:
    """
    ∫_0^{1/2} (1/(1−α)) log((1−α)/α) dα = π²/12

    Args:
        tolerance: 允许的绝对误差估计上限
        method: "direct" 直接积分；"substituted" 使用 ∫_0^∞ y/(e^y+1) dy

    Raises:
        NumericError: 误差估计超过 tolerance
    """
    tolerance = validate_positive(tolerance, "tolerance")
    if method == "direct":
        value, abserr = integrate.quad(mlim_integrand, 0.0, 0.5, epsabs=tolerance / 10, epsrel=0.0, limit=200)
    elif method == "substituted":
        value, abserr = integrate.quad(_substituted_integrand, 0.0, np.inf, epsabs=tolerance / 10, epsrel=0.0, limit=200)
    else:
        raise InvalidParameterError(f"未知积分方法 '{method}'", suggestion="可选: direct, substituted")
    if abserr > tolerance:
        raise NumericError(f"积分未收敛: 误差估计 {abserr:.3e} > 容差 {tolerance:.3e}")
    return float(value)


def alternating_zeta_series(terms: int) -> float:
    """Σ_{j=1}^{terms} (−1)^{j+1}/j²，极限 π²/12"""
    terms = validate_count(terms, "terms", minimum=1)
    j = np.arange(1, terms + 1, dtype=np.float64)
    signs = np.where(j % 2 == 1, 1.0, -1.0)
    return math.fsum(signs / (j * j))


# ==================== 模型极限 ====================

def limit_value(model: str, p: float = 1.0) -> float:
    """二部模型 π²/(6p)，一般图模型 π²/(12p)"""
    if model not in MODELS:
        raise InvalidParameterError(f"未知模型 '{model}'", suggestion=f"支持的模型: {', '.join(MODELS)}")
    p = validate_probability(p)
    return (ZETA2 if model in BIPARTITE_MODELS else HALF_ZETA2) / p


def perfect_cost_theory(model: str, n: int, p: float = 1.0) -> float:
    """完美匹配代价的理论值：完全二部图取 parisi_sum(n)，其余取极限值"""
    if model == COMPLETE_BIPARTITE:
        return parisi_sum(n)
    return limit_value(model, p)
