# coding=utf-8
"""二部图增量求解器、对偶证书与穷举校验"""

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from conftest import make_graph
from randmatch.graph import COMPLETE_BIPARTITE, GNNP, BipartiteWeightedGraph
from randmatch.solver import (
    brute_force_bipartite,
    check_certificate,
    solve_assignment,
    solve_sequence,
)
from randmatch.solver.bipartite import DualCertificate
from randmatch.utils.errors import (
    InvalidParameterError,
    NoMatchingError,
    NoPerfectMatchingError,
    SizeGuardError,
)


def _oracle_costs(g, r_max):
    """逐 r 的穷举代价，第一个不可行的 r 之后为 None"""
    costs = []
    for r in range(1, r_max + 1):
        try:
            costs.append(brute_force_bipartite(g, r).cost)
        except NoMatchingError:
            costs.append(None)
            break
    return costs


class TestSolveSequence:
    def test_square_example(self, square_2x2):
        seq = solve_sequence(square_2x2, keep_matchings=True)
        assert seq.costs == [1.0, 2.0]
        assert seq.final_matching.pairs == ((0, 0), (1, 1))
        assert seq.matched_right_sets == [(0,), (0, 1)]

    def test_single_edge(self):
        seq = solve_sequence(BipartiteWeightedGraph(1, 1, [(0, 0, 0.7)]), 1)
        assert seq.costs == [0.7]
        assert seq.cost(0) == 0.0

    def test_isolated_first_vertex(self):
        g = BipartiteWeightedGraph(2, 2, [(1, 0, 1.0)])
        with pytest.raises(NoMatchingError) as exc:
            solve_sequence(g)
        assert exc.value.r == 1
        assert exc.value.exit_code == 2

    def test_failure_names_first_infeasible_step(self):
        # a1, a2 都只连 b1
        g = BipartiteWeightedGraph(2, 2, [(0, 0, 1.0), (1, 0, 2.0)])
        with pytest.raises(NoMatchingError) as exc:
            solve_sequence(g)
        assert exc.value.r == 2

    def test_r_max_bounds(self, square_2x2):
        assert solve_sequence(square_2x2, 0).costs == []
        with pytest.raises(InvalidParameterError):
            solve_sequence(square_2x2, 3)

    def test_increments_nonnegative_and_telescoping(self):
        g = make_graph(COMPLETE_BIPARTITE, 40, seed=3)
        seq = solve_sequence(g)
        assert all(inc >= -1e-12 for inc in seq.increments)
        assert sum(seq.increments) == pytest.approx(seq.costs[-1], abs=1e-9)
        assert all(c > 0 for c in seq.costs)

    def test_prefix_consistency(self):
        g = make_graph(GNNP, 30, 0.5, seed=8)
        full = solve_sequence(g, 20).costs
        assert solve_sequence(g, 12).costs == full[:12]

    def test_snapshots_cover_prefix(self):
        g = make_graph(COMPLETE_BIPARTITE, 8, seed=1)
        seq = solve_sequence(g, keep_matchings=True)
        for r, m in enumerate(seq.matchings, start=1):
            assert m.left_vertices == tuple(range(r))
            assert m.cost == pytest.approx(seq.costs[r - 1], abs=1e-12)


class TestOracleEquivalence:
    def test_small_instances(self, small_bipartite_graphs):
        for g in small_bipartite_graphs:
            expected = _oracle_costs(g, g.n_left)
            if expected[-1] is None:
                with pytest.raises(NoMatchingError) as exc:
                    solve_sequence(g)
                assert exc.value.r == len(expected)
                continue
            costs = solve_sequence(g).costs
            assert costs == pytest.approx(expected, abs=1e-9)

    def test_scipy_assignment(self):
        for seed in range(20):
            g = make_graph(COMPLETE_BIPARTITE, 25, seed=seed)
            matrix = g.cost_matrix()
            rows, cols = linear_sum_assignment(matrix)
            assert solve_assignment(g).cost == pytest.approx(matrix[rows, cols].sum(), abs=1e-9)

    def test_seven_by_seven(self):
        g = make_graph(COMPLETE_BIPARTITE, 7, seed=12)
        assert solve_assignment(g).cost == pytest.approx(brute_force_bipartite(g, 7).cost, abs=1e-9)

    def test_permutation_invariance_of_assignment(self):
        g = make_graph(GNNP, 20, 0.6, seed=4)
        rng = np.random.default_rng(0)
        relabeled = g.relabel(rng.permutation(20), rng.permutation(20))
        assert solve_assignment(relabeled).cost == pytest.approx(solve_assignment(g).cost, abs=1e-9)

    @pytest.mark.slow
    def test_thousand_random_instances(self):
        checked = 0
        for idx in range(1000):
            n = 2 + idx % 6
            model, p = (COMPLETE_BIPARTITE, 1.0) if idx % 2 else (GNNP, 0.5)
            g = make_graph(model, n, p, seed=17, index=idx)
            expected = _oracle_costs(g, n)
            if expected[-1] is None:
                with pytest.raises(NoMatchingError):
                    solve_sequence(g)
            else:
                assert solve_sequence(g).costs == pytest.approx(expected, abs=1e-9)
            checked += 1
        assert checked == 1000


class TestSolveAssignment:
    def test_single_edge(self):
        assert solve_assignment(BipartiteWeightedGraph(1, 1, [(0, 0, 3.0)])).cost == 3.0

    def test_no_perfect_matching(self):
        g = BipartiteWeightedGraph(2, 2, [(0, 0, 1.0), (1, 0, 1.0)])
        with pytest.raises(NoPerfectMatchingError):
            solve_assignment(g)

    def test_rectangular_rejected(self):
        with pytest.raises(InvalidParameterError):
            solve_assignment(BipartiteWeightedGraph(2, 3, [(0, 0, 1.0), (1, 1, 1.0)]))

    def test_equals_sequence_final(self):
        g = make_graph(COMPLETE_BIPARTITE, 9, seed=2)
        assert solve_assignment(g) == solve_sequence(g).final_matching


class TestCertificate:
    def test_every_step_certified(self):
        g = make_graph(GNNP, 15, 0.6, seed=6)
        seq = solve_sequence(g, 10, keep_matchings=True)
        for m, cert in zip(seq.matchings, seq.certificates):
            assert check_certificate(g, m, cert) == []
            # 强对偶：证书目标值等于匹配代价
            assert cert.objective() == pytest.approx(m.cost, abs=1e-9)

    def test_perturbed_potential_detected(self, square_2x2):
        seq = solve_sequence(square_2x2, keep_matchings=True)
        cert = seq.certificates[-1]
        broken = DualCertificate(cert.r, (cert.y_left[0] + 1.0,) + cert.y_left[1:], cert.y_right)
        assert check_certificate(square_2x2, seq.final_matching, broken)


class TestBruteForce:
    def test_square_example(self, square_2x2):
        assert brute_force_bipartite(square_2x2, 2).cost == 2.0

    def test_empty_prefix(self, square_2x2):
        m = brute_force_bipartite(square_2x2, 0)
        assert len(m) == 0
        assert m.cost == 0.0

    def test_size_guard(self):
        with pytest.raises(SizeGuardError):
            brute_force_bipartite(BipartiteWeightedGraph(10, 10, []), 1)
