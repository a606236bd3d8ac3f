# coding=utf-8
"""图模型、随机数流与随机图生成"""

import math

import numpy as np
import pytest
from scipy import stats

from conftest import make_graph
from randmatch.graph import (
    COMPLETE,
    COMPLETE_BIPARTITE,
    GNNP,
    GNP,
    PURPOSE_GRAPH,
    PURPOSE_SPECIAL,
    BipartiteWeightedGraph,
    ModelSpec,
    RngStream,
    SpecialVertexConfig,
    WeightedGraph,
    augment_special_vertex,
    derive_stream_id,
    exponential_from_uniform,
    generate,
    sample_exponential,
)
from randmatch.utils.errors import InvalidParameterError


class TestExponential:
    def test_inverse_cdf_identities(self):
        assert exponential_from_uniform(1.0, 1.0) == 0.0
        assert exponential_from_uniform(math.exp(-2.0), 2.0) == pytest.approx(1.0, abs=1e-12)

    def test_zero_uniform_rejected(self):
        with pytest.raises(InvalidParameterError):
            exponential_from_uniform(0.0, 1.0)

    @pytest.mark.parametrize("rate", [0.0, -1.0])
    def test_non_positive_rate(self, rate):
        with pytest.raises(InvalidParameterError):
            sample_exponential(rate, RngStream(1, 1))

    def test_sample_mean(self):
        draws = sample_exponential(1.0, RngStream(3, 5), size=1_000_000)
        assert np.all(draws >= 0.0)
        assert np.all(np.isfinite(draws))
        assert abs(draws.mean() - 1.0) < 0.01

    def test_kolmogorov_smirnov(self):
        rate = 2.5
        draws = sample_exponential(rate, RngStream(11, 2), size=10_000)
        result = stats.kstest(draws, "expon", args=(0.0, 1.0 / rate))
        assert result.pvalue > 0.001


class TestRngStream:
    def test_same_key_same_sequence(self):
        a = RngStream(42, 7).uniform(16)
        b = RngStream(42, 7).uniform(16)
        assert a.tolist() == b.tolist()

    def test_distinct_streams_differ(self):
        a = RngStream(42, 7).uniform(16)
        b = RngStream(42, 8).uniform(16)
        assert a.tolist() != b.tolist()

    def test_independence_smoke(self):
        x = RngStream.for_purpose(1, PURPOSE_GRAPH, 0).uniform(20_000)
        y = RngStream.for_purpose(1, PURPOSE_GRAPH, 1).uniform(20_000)
        assert abs(np.corrcoef(x, y)[0, 1]) < 0.05

    def test_stream_id_depends_on_every_component(self):
        base = derive_stream_id(1, PURPOSE_GRAPH, 0)
        assert base != derive_stream_id(2, PURPOSE_GRAPH, 0)
        assert base != derive_stream_id(1, PURPOSE_SPECIAL, 0)
        assert base != derive_stream_id(1, PURPOSE_GRAPH, 1)
        assert 0 <= base < 2 ** 64

    def test_copy_restarts_counter(self):
        rng = RngStream(5, 9)
        first = rng.uniform()
        rng.uniform()
        assert RngStream(rng.base_seed, rng.stream_id).uniform() == first

    def test_open_left_uniform_in_range(self):
        u = RngStream(0, 0).uniform_open_left(10_000)
        assert np.all(u > 0.0)
        assert np.all(u <= 1.0)

    def test_seed_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            RngStream(2 ** 64, 0)


class TestModelSpec:
    def test_complete_models_force_p_one(self):
        assert ModelSpec(COMPLETE, 4, 0.3).p == 1.0
        assert ModelSpec(COMPLETE_BIPARTITE, 4, 0.3).p == 1.0

    @pytest.mark.parametrize("p", [0.0, 1.5, -0.1])
    def test_invalid_probability(self, p):
        with pytest.raises(InvalidParameterError):
            ModelSpec(GNP, 4, p)

    def test_unknown_model(self):
        with pytest.raises(InvalidParameterError):
            ModelSpec("regular", 4)

    def test_dict_round_trip(self):
        spec = ModelSpec(GNNP, 10, 0.25, 2.0)
        assert ModelSpec.from_dict(spec.to_dict()) == spec


class TestGenerate:
    def test_complete_bipartite_edge_count(self):
        g = make_graph(COMPLETE_BIPARTITE, 3)
        assert g.is_bipartite
        assert g.edge_count == 9

    def test_gnp_two_vertices(self):
        g = make_graph(GNP, 2, 1.0)
        assert not g.is_bipartite
        assert [(e.u, e.v) for e in g.edges] == [(0, 1)]

    def test_complete_graph_edge_count(self):
        assert make_graph(COMPLETE, 6).edge_count == 15

    def test_determinism(self):
        a = make_graph(GNNP, 30, 0.3, seed=9, index=4)
        b = make_graph(GNNP, 30, 0.3, seed=9, index=4)
        assert a.edges == b.edges

    def test_gnnp_mean_edge_count(self):
        n, p, samples = 100, 0.3, 200
        counts = [make_graph(GNNP, n, p, seed=1, index=i).edge_count for i in range(samples)]
        se = math.sqrt(n * n * p * (1 - p) / samples)
        assert abs(np.mean(counts) - n * n * p) < 3 * se

    def test_gnp_pair_frequency(self):
        p, seeds = 0.4, 10_000
        hits = sum(
            1 for s in range(seeds)
            if make_graph(GNP, 4, p, seed=s).find_edge(1, 2) is not None
        )
        se = math.sqrt(p * (1 - p) / seeds)
        assert abs(hits / seeds - p) < 4 * se

    def test_adjacency_consistent(self):
        g = make_graph(GNP, 20, 0.3, seed=2)
        for v, incident in enumerate(g.adjacency):
            for idx in incident:
                assert v in (g.edges[idx].u, g.edges[idx].v)
        assert sum(len(a) for a in g.adjacency) == 2 * g.edge_count

    def test_weights_scale_with_rate(self):
        g = generate(ModelSpec(COMPLETE_BIPARTITE, 60, 1.0, rate=4.0), RngStream(0, 1))
        mean = np.mean([e.w for e in g.edges])
        assert abs(mean - 0.25) < 0.03


class TestSpecialVertex:
    def test_single_vertex_without_edges(self):
        g = BipartiteWeightedGraph(1, 1, [])
        out = augment_special_vertex(g, SpecialVertexConfig(1.0), RngStream(0, 0))
        assert out.n_right == 2
        assert [(e.u, e.v) for e in out.edges] == [(0, 1)]

    def test_adds_one_edge_per_left_vertex(self):
        g = make_graph(GNNP, 5, 0.5, seed=3)
        out = augment_special_vertex(g, SpecialVertexConfig(0.5), RngStream(0, 1))
        assert out.n_right == 6
        assert out.edge_count == g.edge_count + 5
        assert out.edges[: g.edge_count] == g.edges

    def test_special_weight_mean(self):
        g = BipartiteWeightedGraph(100_000, 100_000, [])
        out = augment_special_vertex(g, SpecialVertexConfig(10.0), RngStream(4, 4))
        weights = np.array([e.w for e in out.edges])
        se = 0.1 / math.sqrt(len(weights))
        assert abs(weights.mean() - 0.1) < 3 * se

    def test_rejects_non_square(self):
        with pytest.raises(InvalidParameterError):
            augment_special_vertex(BipartiteWeightedGraph(2, 3, []), SpecialVertexConfig(1.0), RngStream(0, 0))

    def test_lambda_must_be_positive(self):
        with pytest.raises(InvalidParameterError):
            SpecialVertexConfig(0.0)


class TestGraphTypes:
    def test_duplicate_edge_rejected(self):
        with pytest.raises(InvalidParameterError):
            BipartiteWeightedGraph(2, 2, [(0, 0, 1.0), (0, 0, 2.0)])

    def test_general_edges_canonicalised(self):
        g = WeightedGraph(3, [(2, 0, 1.0)])
        assert (g.edges[0].u, g.edges[0].v) == (0, 2)

    def test_self_loop_rejected(self):
        with pytest.raises(InvalidParameterError):
            WeightedGraph(3, [(1, 1, 1.0)])

    @pytest.mark.parametrize("w", [-1.0, math.inf, math.nan])
    def test_bad_weight_rejected(self, w):
        with pytest.raises(InvalidParameterError):
            WeightedGraph(2, [(0, 1, w)])

    def test_cost_matrix_marks_missing_edges(self):
        g = BipartiteWeightedGraph(2, 2, [(0, 1, 0.5)])
        matrix = g.cost_matrix()
        assert matrix[0, 1] == 0.5
        assert math.isinf(matrix[1, 0])

    def test_truncate_weights(self):
        g = WeightedGraph(3, [(0, 1, 0.2), (1, 2, 5.0)])
        assert [e.w for e in g.truncate_weights(1.0).edges] == [0.2, 1.0]

    def test_relabel_keeps_weights(self):
        g = BipartiteWeightedGraph(2, 2, [(0, 1, 0.5)])
        out = g.relabel([1, 0], [1, 0])
        assert tuple(out.edges[0]) == (1, 0, 0.5)
