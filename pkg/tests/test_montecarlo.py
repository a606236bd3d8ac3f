# coding=utf-8
"""蒙特卡洛实验：数据模型、执行器、估计量与验收实验"""

import math

import pytest

from randmatch import theory
from randmatch.graph import COMPLETE, COMPLETE_BIPARTITE, GNNP, GNP, ModelSpec
from randmatch.montecarlo import (
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
    analyze,
    build_experiment,
    concentration_tail,
    estimate_pnr,
    execute,
    increment_profile,
    membership_frequency,
    membership_from_records,
    run_experiment,
    run_trial,
    run_trials,
    sample_stats,
    summarize,
)
from randmatch.utils.errors import (
    InvalidParameterError,
    OddVertexCountError,
    UnknownExperimentError,
)


def _spec(model=COMPLETE_BIPARTITE, n=4, p=1.0, trials=10, seed=1, quantity=PERFECT_COST, **params):
    return ExperimentSpec("test", ModelSpec(model, n, p), trials, seed, quantity, params)


class TestExperimentSpec:
    def test_defaults_resolved(self):
        assert _spec(quantity=COST_SEQUENCE).params == {"r_max": 4}
        pnr = _spec(quantity=PNR, r=2)
        assert pnr.params == {"r": 2, "lambda": 0.01}
        maxedge = _spec(model=GNNP, n=400, p=0.25, quantity=MAX_EDGE)
        assert maxedge.params["m"] == theory.default_cutoff(400)

    def test_odd_general_rejected(self):
        with pytest.raises(OddVertexCountError):
            _spec(model=COMPLETE, n=5)

    @pytest.mark.parametrize("quantity", [COST_SEQUENCE, PNR, MEMBERSHIP])
    def test_bipartite_only_quantities(self, quantity):
        with pytest.raises(InvalidParameterError):
            _spec(model=GNP, n=6, p=0.5, quantity=quantity, r=1)

    def test_required_parameters(self):
        with pytest.raises(InvalidParameterError):
            _spec(quantity=PNR)
        with pytest.raises(InvalidParameterError):
            _spec(quantity=MEMBERSHIP, r=5)
        with pytest.raises(InvalidParameterError):
            _spec(quantity="variance")
        with pytest.raises(InvalidParameterError):
            _spec(trials=0)

    def test_dict_round_trip(self):
        spec = _spec(model=GNNP, n=30, p=0.3, quantity=CONCENTRATION, epsilons=[0.1, 0.3])
        assert ExperimentSpec.from_dict(spec.to_dict()) == spec


class TestStats:
    def test_sample_stats(self):
        assert sample_stats([1.0, 3.0]) == (2.0, 2.0, 1.0)
        assert sample_stats([]) == (None, None, None)
        assert sample_stats([5.0]) == (5.0, 0.0, 0.0)

    def test_summary_independent_of_record_order(self):
        records = [TrialRecord(i, i, scalars={"x": 0.1 * i, "y": float(i % 3)}) for i in range(30)]
        forward = summarize(records, "x", 1.0)
        backward = summarize(list(reversed(records)), "x", 1.0)
        assert forward == backward
        assert forward.others["y"]["count"] == 30

    def test_infeasible_records_excluded(self):
        records = [
            TrialRecord(0, 0, scalars={"x": 1.0}),
            TrialRecord(1, 1, outcome=OUTCOME_INFEASIBLE, scalars={"failed_r": 2.0}),
            TrialRecord(2, 2, scalars={"x": 3.0}),
        ]
        s = summarize(records, "x")
        assert (s.trials, s.trials_ok, s.trials_infeasible) == (3, 2, 1)
        assert s.mean == 2.0
        assert "failed_r" not in s.others
        assert s.comparison is None

    def test_comparison(self):
        s = summarize([TrialRecord(i, i, scalars={"x": v}) for i, v in enumerate([1.0, 3.0])], "x", 4.0)
        assert s.comparison.relative_deviation == pytest.approx(0.5)
        assert s.comparison.z_score == pytest.approx(-2.0)


class TestRunner:
    def test_trial_reproducible(self):
        spec = _spec(n=6)
        assert run_trial(spec, 3) == run_trial(spec, 3)
        assert run_trial(spec, 3).stream_id != run_trial(spec, 4).stream_id

    def test_workers_do_not_change_records(self):
        spec = _spec(n=5, trials=12, quantity=COST_SEQUENCE)
        serial = run_trials(spec, workers=1)
        parallel = run_trials(spec, workers=2, chunk_size=5)
        assert [r.to_dict() for r in serial] == [r.to_dict() for r in parallel]

    def test_infeasible_trials_recorded(self):
        spec = _spec(model=GNNP, n=6, p=0.1, trials=30, seed=2)
        records, summary = run_experiment(spec)
        bad = [r for r in records if r.outcome == OUTCOME_INFEASIBLE]
        assert bad
        assert all(set(r.scalars) == {"failed_r"} for r in bad)
        assert summary.trials_infeasible == len(bad)

    def test_summary_compares_against_parisi_sum(self):
        records, summary = run_experiment(_spec(n=3, trials=40))
        assert summary.metric == "p_cost"
        assert summary.comparison.theory_value == pytest.approx(theory.parisi_sum(3))


class TestEstimators:
    def test_pnr_with_zero_steps(self):
        est = estimate_pnr(5, 0, trials=4)
        assert est.estimate == 0.0
        assert est.theory == 0.0

    def test_pnr_fields(self):
        est = estimate_pnr(4, 2, lam=0.5, trials=40, base_seed=3)
        assert est.trials_ok == 40
        assert 0 <= est.hits <= 40
        assert est.estimate == pytest.approx(est.hits / 40 / 0.5)
        assert est.theory == pytest.approx(theory.pnr_theory(4, 2))

    def test_membership_frequencies_sum_to_r(self):
        result = membership_frequency(6, 2, trials=50, base_seed=4)
        assert len(result.frequencies) == 6
        assert math.fsum(result.frequencies) == pytest.approx(2.0)
        assert result.dof == 5

    def test_balanced_counts_give_zero_chi_square(self):
        spec = _spec(n=4, quantity=MEMBERSHIP, r=2)
        subsets = [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]
        records = [
            TrialRecord(i, i, scalars={f"member_{j}": 1.0 if j in s else 0.0 for j in range(4)})
            for i, s in enumerate(subsets)
        ]
        result = membership_from_records(spec, records)
        assert result.frequencies == [0.5] * 4
        assert result.chi_square == pytest.approx(0.0)
        assert result.passes()

    def test_skewed_counts_fail(self):
        spec = _spec(n=4, quantity=MEMBERSHIP, r=2)
        records = [
            TrialRecord(i, i, scalars={"member_0": 1.0, "member_1": 1.0, "member_2": 0.0, "member_3": 0.0})
            for i in range(200)
        ]
        assert not membership_from_records(spec, records).passes()

    def test_increment_profile_telescopes(self):
        profile = increment_profile(5, trials=30, base_seed=5)
        assert [row.r for row in profile.rows] == [1, 2, 3, 4, 5]
        assert profile.total_theory == pytest.approx(theory.parisi_sum(5))
        records = run_trials(_spec(n=5, trials=30, seed=5, quantity=COST_SEQUENCE))
        costs = [r.scalars["cost"] for r in records]
        assert profile.total_mean == pytest.approx(math.fsum(costs) / 30, abs=1e-12)

    def test_concentration_rows(self):
        spec = _spec(model=GNNP, n=20, p=0.5, trials=6, quantity=CONCENTRATION, epsilons=[0.0, 100.0])
        result = concentration_tail(spec)
        assert result.exceedance(0.0) == 1.0
        assert result.exceedance(100.0) == 0.0
        assert result.centre == pytest.approx(theory.ZETA2)
        assert result.exceedance(0.5) is None

    def test_concentration_requires_matching_quantity(self):
        with pytest.raises(InvalidParameterError):
            concentration_tail(_spec())

    def test_analysis_by_quantity(self):
        maxedge = _spec(model=GNNP, n=20, p=0.5, trials=4, quantity=MAX_EDGE)
        assert set(analyze(maxedge, run_trials(maxedge))) == {"threshold_constant", "within_threshold_fraction"}
        diameter = _spec(model=GNP, n=20, p=0.6, trials=3, quantity=DIAMETER, pair_samples=10)
        assert 0.0 <= analyze(diameter, run_trials(diameter))["within_bound_fraction"] <= 1.0
        assert analyze(_spec(trials=2), run_trials(_spec(trials=2))) == {}


class TestCatalog:
    def test_unknown_name(self):
        with pytest.raises(UnknownExperimentError) as exc:
            build_experiment("theorem9")
        assert exc.value.exit_code == 4

    def test_overrides(self):
        spec = build_experiment("parisi", base_seed=9, n=5, trials=7)
        assert (spec.model.model, spec.model.n, spec.trials, spec.base_seed) == (COMPLETE_BIPARTITE, 5, 7, 9)

    def test_sparse_p_switches_model(self):
        assert build_experiment("parisi", p=0.5).model.model == GNNP

    def test_diameter_density(self):
        spec = build_experiment("diameter")
        assert spec.model.p == pytest.approx(3 * math.log(300) ** 2 / 300)
        assert spec.params["r"] == 300 - theory.default_cutoff(300)

    def test_execute(self):
        result = execute(build_experiment("pnr", base_seed=1, n=4, trials=20, params={"r": 2}))
        assert result.summary.trials == 20
        assert result.analysis["r"] == 2
        assert "theory=" in result.theory_line


# ==================== 验收实验（--runslow） ====================

@pytest.mark.slow
class TestAcceptance:
    def test_parisi_exactness(self):
        result = execute(build_experiment("parisi", base_seed=1), workers=0)
        s = result.summary
        assert abs(s.mean - 1.5497677) <= 3 * s.standard_error

    def test_bipartite_limit(self):
        deviations = {}
        for n in (100, 400):
            s = execute(build_experiment("theorem1", base_seed=1, n=n), workers=0).summary
            deviations[n] = s.comparison.relative_deviation
        assert deviations[400] <= 0.10
        assert deviations[400] <= deviations[100]

    def test_general_limit(self):
        s = execute(build_experiment("theorem2", base_seed=1), workers=0).summary
        assert abs(s.mean - 0.8224670) / 0.8224670 <= 0.10

    def test_increment_law(self):
        result = execute(build_experiment("increments", base_seed=1), workers=0)
        for row in result.analysis["rows"]:
            assert abs(row["empirical"] - row["theory"]) <= 3 * row["standard_error"]
        assert result.analysis["total_theory"] == pytest.approx(1.5497677, abs=1e-7)

    def test_special_vertex_probe(self):
        est = estimate_pnr(20, 10, lam=0.01, trials=1_000_000, base_seed=1, workers=0)
        assert abs(est.estimate - 0.6687714) <= max(3 * est.standard_error, 0.02 * 0.6687714)

    def test_uniform_membership(self):
        result = membership_frequency(6, 3, trials=10_000, base_seed=1, workers=0)
        assert result.passes(0.001)

    def test_diameter_bound(self):
        result = execute(build_experiment("diameter", base_seed=1), workers=0)
        assert result.analysis["within_bound_fraction"] >= 0.95

    def test_max_edge(self):
        result = execute(build_experiment("maxedge", base_seed=1), workers=0)
        assert result.analysis["within_threshold_fraction"] >= 0.99

    def test_concentration_trend(self):
        frequencies = []
        for n in (100, 200, 400):
            result = execute(build_experiment("concentration", base_seed=1, n=n), workers=0)
            frequencies.append(result.analysis["rows"][0]["exceedance"])
            assert result.analysis["truncation_differs_frequency"] <= 0.01
        # 每个点 300 次试验，相邻 n 之间允许一个标准误量级的抽样波动
        slack = 0.03
        assert frequencies[1] <= frequencies[0] + slack
        assert frequencies[2] <= frequencies[1] + slack
