# coding=utf-8
"""理论参考值"""

import math

import numpy as np
import pytest

from randmatch import theory
from randmatch.graph import COMPLETE, COMPLETE_BIPARTITE, GNNP, GNP
from randmatch.utils.errors import InvalidParameterError, NumericError


class TestHarmonic:
    def test_small_values(self):
        assert theory.harmonic(0) == 0.0
        assert theory.harmonic(1) == 1.0
        assert theory.harmonic(2) == 1.5

    def test_table_matches_direct_sum(self):
        table = theory.harmonic_table(50)
        for n in (1, 7, 50):
            assert table[n] == pytest.approx(theory.harmonic(n), abs=1e-13)

    def test_asymptotic_error_below_inverse_square(self):
        table = theory.harmonic_table(10_000)
        for n in range(10, 10_001):
            assert abs(table[n] - theory.harmonic_asymptotic(n)) <= 1.0 / n ** 2


class TestParisi:
    def test_reference_value(self):
        assert theory.parisi_sum(10) == pytest.approx(1.5497677, abs=1e-7)

    def test_converges_to_zeta2(self):
        assert theory.parisi_sum(100_000) == pytest.approx(theory.ZETA2, abs=1.1e-5)

    def test_double_sum_without_cutoff_is_parisi_sum(self):
        for n in (1, 2, 10, 500):
            assert theory.double_sum(n, 0) == pytest.approx(theory.parisi_sum(n), abs=1e-12)

    def test_double_sum_with_default_cutoff(self):
        n = 1_000_000
        value = theory.double_sum(n, theory.default_cutoff(n))
        assert abs(value - theory.ZETA2) / theory.ZETA2 <= 0.03


class TestIncrementLaw:
    def test_first_and_last_increment(self):
        assert theory.expected_increment(10, 1) == pytest.approx(0.1, abs=1e-15)
        assert theory.expected_increment(10, 10) == pytest.approx(0.2928968, abs=1e-7)

    def test_increments_telescope_to_parisi_sum(self):
        total = math.fsum(theory.expected_increment(10, r) for r in range(1, 11))
        assert total == pytest.approx(theory.parisi_sum(10), abs=1e-12)

    def test_sparse_scaling(self):
        assert theory.expected_increment(10, 3, 0.5) == pytest.approx(2 * theory.expected_increment(10, 3))

    @pytest.mark.parametrize("r", [0, 11])
    def test_r_out_of_range(self, r):
        with pytest.raises(InvalidParameterError):
            theory.expected_increment(10, r)


class TestPnr:
    def test_reference_value(self):
        assert theory.pnr_theory(20, 10) == pytest.approx(0.6687714, abs=1e-7)

    def test_zero_steps(self):
        assert theory.pnr_theory(5, 0) == 0.0
        assert theory.pnr_finite_lambda(5, 0, 1.0, 0.01) == 0.0

    def test_finite_lambda_approaches_limit(self):
        limit = theory.pnr_theory(20, 10)
        coarse = theory.pnr_finite_lambda(20, 10, 1.0, 0.1)
        fine = theory.pnr_finite_lambda(20, 10, 1.0, 1e-6)
        assert abs(fine - limit) < abs(coarse - limit)
        assert fine == pytest.approx(limit, rel=1e-5)

    def test_finite_lambda_matches_step_probabilities(self):
        n, r, p, lam = 12, 5, 0.5, 0.2
        miss = 1.0
        for step in range(1, r + 1):
            miss *= 1.0 - theory.step_hit_probability(n, step, p, lam)
        assert theory.pnr_finite_lambda(n, r, p, lam) == pytest.approx((1.0 - miss) / lam, rel=1e-12)


class TestBounds:
    def test_default_cutoff(self):
        assert theory.default_cutoff(1) == 0
        assert theory.default_cutoff(300) == 9
        assert theory.default_cutoff(400) == 11

    def test_lower_and_upper(self):
        assert theory.lower_L(4, 1) == pytest.approx(1 / 4 + 1 / 3)
        assert theory.upper_U(4, 1) == pytest.approx(2 / 3)
        assert theory.upper_U(4, 0) == 0.0
        with pytest.raises(InvalidParameterError):
            theory.lower_L(3, 2)

    def test_vectorised_sums_match_definition(self):
        n, m = 101, 7
        k = (n - m) // 2
        lower = math.fsum(theory.lower_L(n - r + 1, k - r + 1) / (n - r + 1) for r in range(1, k + 1))
        upper = math.fsum(theory.upper_U(n - r + 1, k - r + 1) / (n - r + 1) for r in range(1, k + 1))
        assert theory.general_bound_sum(n, m) == pytest.approx(lower, abs=1e-12)
        assert theory.general_bound_sum(n, m, upper=True) == pytest.approx(upper, abs=1e-12)

    def test_general_sums_tend_to_half_zeta2(self):
        n = 100_000
        for upper in (False, True):
            value = theory.general_bound_sum(n, 0, upper=upper)
            assert abs(value - theory.HALF_ZETA2) / theory.HALF_ZETA2 < 0.01


class TestHalfZeta2:
    def test_integral(self):
        assert theory.mlim_integral(1e-8) == pytest.approx(theory.HALF_ZETA2, abs=1e-8)

    def test_substituted_integral(self):
        assert theory.mlim_integral(1e-8, method="substituted") == pytest.approx(theory.HALF_ZETA2, abs=1e-8)

    def test_unknown_method(self):
        with pytest.raises(InvalidParameterError):
            theory.mlim_integral(method="simpson")

    def test_impossible_tolerance(self):
        with pytest.raises(NumericError):
            theory.mlim_integral(1e-300)

    def test_alternating_series(self):
        assert theory.alternating_zeta_series(100_000) == pytest.approx(theory.HALF_ZETA2, abs=1e-9)

    def test_integrand_value(self):
        assert theory.mlim_integrand(0.5) == 0.0
        assert theory.mlim_integrand(0.25) == pytest.approx(math.log(3) / 0.75)


class TestLimits:
    @pytest.mark.parametrize(
        "model, p, expected",
        [
            (COMPLETE_BIPARTITE, 1.0, math.pi ** 2 / 6),
            (GNNP, 0.25, 4 * math.pi ** 2 / 6),
            (COMPLETE, 1.0, math.pi ** 2 / 12),
            (GNP, 0.25, 4 * math.pi ** 2 / 12),
        ],
    )
    def test_limit_value(self, model, p, expected):
        assert theory.limit_value(model, p) == pytest.approx(expected)

    def test_perfect_cost_theory_uses_parisi_for_complete_bipartite(self):
        assert theory.perfect_cost_theory(COMPLETE_BIPARTITE, 10) == theory.parisi_sum(10)
        assert theory.perfect_cost_theory(GNP, 100, 0.5) == theory.limit_value(GNP, 0.5)

    def test_params_default_cutoff(self):
        params = theory.TheoryParams(n=300)
        assert params.m == 9
        with pytest.raises(InvalidParameterError):
            theory.TheoryParams(n=5, r=6)

    def test_numeric_constants(self):
        assert theory.ZETA2 == pytest.approx(1.6449341, abs=1e-7)
        assert theory.HALF_ZETA2 == pytest.approx(0.8224670, abs=1e-7)
        assert np.isclose(2 * theory.HALF_ZETA2, theory.ZETA2)
