# Copyright 2026 The DMSP Authors. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License").
# You may not use this file except in compliance with the License.
# A copy of the License is located at
#     http://www.apache.org/licenses/LICENSE-2.0
# or in the "license" file accompanying this file. This file is distributed
# on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either
# express or implied. See the License for the specific language governing
# permissions and limitations under the License.

import os

import numpy as np
import pytest

from dmsp.learner import consensus_deviation
from dmsp.network import (GraphSnapshot, TimeVaryingNetwork, consensus_average, consensus_round, gen_er_snapshot,
                          is_strongly_connected, metropolis_weights, push_weights)
from dmsp.protocol.matrix_codec import read_matrix_csv


def random_snapshots(directed, count=1000, seed=0):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n_nodes = int(rng.integers(1, 11))
        yield gen_er_snapshot(n_nodes, float(rng.random()), directed, rng)


# noinspection PyClassHasNoInit
class TestSnapshot:

    def test_self_loop(self):
        with pytest.raises(ValueError, match="self-loop"):
            GraphSnapshot(3, True, frozenset({(1, 1)}))

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            GraphSnapshot(3, True, frozenset({(0, 3)}))

    def test_undirected_needs_mirror(self):
        with pytest.raises(ValueError, match="mirror"):
            GraphSnapshot(3, False, frozenset({(0, 1)}))

    def test_neighborhoods_include_self(self):
        graph = GraphSnapshot(3, True, frozenset({(0, 1), (2, 1)}))
        assert graph.in_neighborhood(1) == {0, 1, 2}
        assert graph.out_neighborhood(0) == {0, 1}
        assert graph.in_neighborhood(0) == {0}

    def test_undirected_generation_is_symmetric(self):
        graph = gen_er_snapshot(12, 0.4, False, np.random.default_rng(1))
        np.testing.assert_array_equal(graph.adjacency(), graph.adjacency().T)

    def test_extreme_probabilities(self):
        rng = np.random.default_rng(0)
        assert not gen_er_snapshot(5, 0.0, True, rng).edges
        assert len(gen_er_snapshot(5, 1.0, True, rng).edges) == 20

    def test_directed_edge_count_is_binomial(self):
        rng = np.random.default_rng(36)
        counts = np.array([len(gen_er_snapshot(36, 0.5, True, rng).edges) for _ in range(200)])
        # Binomial(36 * 35, 0.5): mean 630, standard deviation about 17.7
        assert abs(counts.mean() - 630) <= 5
        assert np.all(np.abs(counts - 630) <= 110)

    def test_bad_probability(self):
        with pytest.raises(ValueError, match="edge probability"):
            gen_er_snapshot(4, 1.2, True, np.random.default_rng(0))


# noinspection PyClassHasNoInit
class TestWeights:

    def test_metropolis_invariants(self):
        for graph in random_snapshots(directed=False):
            weights = metropolis_weights(graph)
            np.testing.assert_allclose(weights, weights.T, atol=1e-15)
            np.testing.assert_allclose(weights.sum(axis=0), 1.0, atol=1e-12)
            np.testing.assert_allclose(weights.sum(axis=1), 1.0, atol=1e-12)
            assert np.all(np.diag(weights) > 0)
            off_diagonal = ~np.eye(graph.n_nodes, dtype=bool)
            np.testing.assert_array_equal((weights > 0)[off_diagonal], (graph.adjacency() > 0)[off_diagonal])

    def test_push_invariants(self):
        for graph in random_snapshots(directed=True):
            weights = push_weights(graph)
            np.testing.assert_allclose(weights.sum(axis=0), 1.0, atol=1e-12)
            support = (graph.adjacency().T + np.eye(graph.n_nodes)) > 0
            np.testing.assert_array_equal(weights > 0, support)

    def test_metropolis_value(self):
        # path 0 - 1 - 2: |N_0| = 2, |N_1| = 3, |N_2| = 2
        graph = GraphSnapshot(3, False, frozenset({(0, 1), (1, 0), (1, 2), (2, 1)}))
        expected = np.array([[2 / 3, 1 / 3, 0], [1 / 3, 1 / 3, 1 / 3], [0, 1 / 3, 2 / 3]])
        np.testing.assert_allclose(metropolis_weights(graph), expected)

    def test_wrong_direction(self):
        directed = GraphSnapshot(2, True, frozenset())
        undirected = GraphSnapshot(2, False, frozenset())
        with pytest.raises(ValueError, match="undirected"):
            metropolis_weights(directed)
        with pytest.raises(ValueError, match="directed"):
            push_weights(undirected)


# noinspection PyClassHasNoInit
class TestConsensus:

    def test_conservation(self):
        rng = np.random.default_rng(8)
        for graph in random_snapshots(directed=True, seed=8):
            values = [rng.standard_normal((3, 3)) for _ in range(graph.n_nodes)]
            mixed = consensus_round(values, push_weights(graph))
            total = np.sum(values, axis=0)
            assert np.linalg.norm(np.sum(mixed, axis=0) - total) <= 1e-9 * max(np.linalg.norm(total), 1.0)

    def test_complete_graph_averages_in_one_round(self):
        net = TimeVaryingNetwork(6, 1.0, directed=False, seed=2)
        values = [np.full((2, 2), float(i)) for i in range(6)]
        for value in consensus_average(values, net, 0, 1):
            np.testing.assert_allclose(value, np.full((2, 2), 2.5))

    def test_max_deviation_never_grows_on_a_fixed_snapshot(self):
        rng = np.random.default_rng(50)
        connected = 0
        for _ in range(50):
            graph = gen_er_snapshot(8, 0.5, False, rng)
            if not is_strongly_connected([graph]):
                continue
            connected += 1
            weights = metropolis_weights(graph)
            values = [rng.standard_normal((2, 2)) for _ in range(8)]
            mean = np.mean(values, axis=0)
            deviations = [consensus_deviation(values, mean)]
            for _ in range(20):
                values = consensus_round(values, weights)
                deviations.append(consensus_deviation(values, mean))
            for before, after in zip(deviations, deviations[1:]):
                assert after <= before + 1e-12
            assert deviations[-1] < deviations[0]
        assert connected >= 30

    def test_ring_converges_to_the_mean(self):
        ring = frozenset({(i, (i + 1) % 8) for i in range(8)} | {((i + 1) % 8, i) for i in range(8)})
        weights = metropolis_weights(GraphSnapshot(8, False, ring))
        values = [np.full((2, 2), float(i)) for i in range(8)]
        start = consensus_deviation(values, np.full((2, 2), 3.5))
        for _ in range(100):
            values = consensus_round(values, weights)
        assert consensus_deviation(values, np.full((2, 2), 3.5)) <= 1e-6 * start

    @pytest.mark.parametrize('seed', range(5))
    def test_deviation_non_increasing_in_rounds(self, seed):
        net = TimeVaryingNetwork(8, 0.3, directed=False, seed=seed)
        rng = np.random.default_rng(seed)
        values = [rng.standard_normal((3, 3)) for _ in range(8)]
        mean = np.mean(values, axis=0)
        deviations = [consensus_deviation(consensus_average(values, net, 2, rounds), mean) for rounds in range(11)]
        for before, after in zip(deviations, deviations[1:]):
            assert after <= before + 1e-12

    def test_empty_graph_is_identity(self):
        net = TimeVaryingNetwork(4, 0.0, directed=True, seed=2)
        values = [np.full((2, 2), float(i)) for i in range(4)]
        mixed = consensus_average(values, net, 3, 5)
        for before, after in zip(values, mixed):
            np.testing.assert_array_equal(before, after)

    def test_zero_rounds(self):
        net = TimeVaryingNetwork(3, 0.5, seed=0)
        values = [np.eye(2) * i for i in range(3)]
        assert all(a is b for a, b in zip(consensus_average(values, net, 0, 0), values))

    def test_negative_rounds(self):
        with pytest.raises(ValueError, match="non-negative"):
            consensus_average([np.eye(2)], TimeVaryingNetwork(1, 0.5), 0, -1)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError, match="weight matrix shape"):
            consensus_round([np.eye(2), np.eye(2)], np.eye(3))
        with pytest.raises(ValueError, match="share one shape"):
            consensus_round([np.eye(2), np.eye(3)], np.eye(2))


# noinspection PyClassHasNoInit
class TestTimeVaryingNetwork:

    def test_snapshots_are_deterministic(self):
        first = TimeVaryingNetwork(10, 0.5, seed=4)
        second = TimeVaryingNetwork(10, 0.5, seed=4)
        assert first.snapshot(2, 3) == second.snapshot(2, 3)
        assert first.snapshot(2, 3) != first.snapshot(2, 4)
        assert first.snapshot(2, 3) != TimeVaryingNetwork(10, 0.5, seed=5).snapshot(2, 3)

    def test_static_network(self):
        net = TimeVaryingNetwork(10, 0.5, directed=False, seed=4, static=True)
        assert net.snapshot(0, 1) == net.snapshot(7, 3)
        np.testing.assert_array_equal(net.weights(1, 1), metropolis_weights(net.snapshot(0, 0)))

    def test_weight_kind_follows_direction(self):
        directed = TimeVaryingNetwork(5, 0.5, directed=True, seed=1)
        np.testing.assert_array_equal(directed.weights(0, 1), push_weights(directed.snapshot(0, 1)))

    @pytest.mark.parametrize('kwargs,message', [
        (dict(n_nodes=0, edge_prob=0.5), "node count"),
        (dict(n_nodes=3, edge_prob=-0.1), "edge probability"),
    ])
    def test_invalid(self, kwargs, message):
        with pytest.raises(ValueError, match=message):
            TimeVaryingNetwork(**kwargs)

    def test_dump(self, tmp_path):
        net = TimeVaryingNetwork(4, 0.5, directed=True, seed=1, dump_dir=str(tmp_path / 'graphs'))
        consensus_average([np.eye(2)] * 4, net, 0, 2)
        for s in (1, 2):
            adjacency = read_matrix_csv(os.path.join(net.dump_dir, 'adjacency_t0_s{}.csv'.format(s)))
            weights = read_matrix_csv(os.path.join(net.dump_dir, 'weights_t0_s{}.csv'.format(s)))
            np.testing.assert_array_equal(adjacency, net.snapshot(0, s).adjacency())
            np.testing.assert_array_equal(weights, net.weights(0, s))


# noinspection PyClassHasNoInit
class TestStrongConnectivity:

    def test_cycle_split_over_snapshots(self):
        first = GraphSnapshot(3, True, frozenset({(0, 1), (1, 2)}))
        second = GraphSnapshot(3, True, frozenset({(2, 0)}))
        assert not is_strongly_connected([first])
        assert is_strongly_connected([first, second])

    def test_single_node(self):
        assert is_strongly_connected([GraphSnapshot(1, True, frozenset())])

    def test_empty_sequence(self):
        with pytest.raises(ValueError, match="at least one snapshot"):
            is_strongly_connected([])

    def test_mixed_sizes(self):
        with pytest.raises(ValueError, match="node count"):
            is_strongly_connected([GraphSnapshot(2, True, frozenset()), GraphSnapshot(3, True, frozenset())])
