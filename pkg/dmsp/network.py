# Copyright 2026 The DMSP Authors. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License").
# You may not use this file except in compliance with the License.
# A copy of the License is located at
#     http://www.apache.org/licenses/LICENSE-2.0
# or in the "license" file accompanying this file. This file is distributed
# on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either
# express or implied. See the License for the specific language governing
# permissions and limitations under the License.

"""
Time-varying network simulation: Erdos-Renyi snapshots, weight matrices and consensus averaging.

Edge (i, j) means node i sends to node j, so i belongs to the in-neighborhood of j.
Neighborhoods always include the node itself; self-loops are never stored.
"""
import logging
import os
from dataclasses import dataclass

import networkx as nx
import numpy as np

from dmsp.protocol.matrix_codec import write_matrix_csv

logger = logging.getLogger(__name__)

SEED_BOUND = 2 ** 32


@dataclass(frozen=True)
class GraphSnapshot(object):
    """
    One graph of the time-varying sequence.
    """
    n_nodes: int
    directed: bool
    edges: frozenset

    def __post_init__(self):
        for i, j in self.edges:
            if i == j:
                raise ValueError("self-loop edge ({}, {}) is not allowed".format(i, j))
            if not (0 <= i < self.n_nodes and 0 <= j < self.n_nodes):
                raise ValueError("edge ({}, {}) out of range for {} nodes".format(i, j, self.n_nodes))
            if not self.directed and (j, i) not in self.edges:
                raise ValueError("undirected snapshot is missing the mirror of edge ({}, {})".format(i, j))

    def adjacency(self):
        """
        0/1 matrix with a[i, j] = 1 for every stored edge i -> j.
        """
        adj = np.zeros((self.n_nodes, self.n_nodes))
        if self.edges:
            src, dst = zip(*self.edges)
            adj[list(src), list(dst)] = 1.0
        return adj

    def in_neighborhood(self, node):
        return {i for i, j in self.edges if j == node} | {node}

    def out_neighborhood(self, node):
        return {j for i, j in self.edges if i == node} | {node}

    def to_networkx(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n_nodes))
        graph.add_edges_from(self.edges)
        return graph


def gen_er_snapshot(n_nodes, edge_prob, directed, rng):
    """
    Erdos-Renyi snapshot. Directed mode draws every ordered pair independently; undirected
    mode draws each unordered pair once and stores both directions.

    :param n_nodes: node count N
    :param edge_prob: probability P in [0, 1]
    :param directed: bool
    :param rng: numpy.random.Generator used to seed the generator
    """
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge probability must lie in [0, 1], got {}".format(edge_prob))
    seed = int(rng.integers(SEED_BOUND))
    graph = nx.gnp_random_graph(n_nodes, edge_prob, seed=seed, directed=directed)
    edges = set()
    for i, j in graph.edges():
        edges.add((i, j))
        if not directed:
            edges.add((j, i))
    return GraphSnapshot(n_nodes, directed, frozenset(edges))


def metropolis_weights(graph):
    """
    Metropolis weights for an undirected snapshot: w_ij = 1 / max(|N_i|, |N_j|) on edges,
    the diagonal takes the remaining mass. The result is symmetric and doubly stochastic.
    """
    if graph.directed:
        raise ValueError("Metropolis weights require an undirected snapshot")
    adj = graph.adjacency()
    size = adj.sum(axis=1) + 1.0
    weights = adj / np.maximum(size[:, np.newaxis], size[np.newaxis, :])
    np.fill_diagonal(weights, 1.0 - weights.sum(axis=1))
    return weights


def push_weights(graph):
    """
    Column stochastic weights for a directed snapshot: column j spreads 1 / |N_j,out| over
    node j and every node it sends to.
    """
    if not graph.directed:
        raise ValueError("push weights require a directed snapshot")
    adj = graph.adjacency() + np.eye(graph.n_nodes)
    return adj.T / adj.sum(axis=1)[np.newaxis, :]


def consensus_round(values, weights):
    """
    One synchronous mixing round: value_i' = sum_j w_ij value_j.

    :param values: list of N equally shaped matrices
    :param weights: N x N weight matrix
    :return: list of N matrices
    """
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 2 or weights.shape != (len(values), len(values)):
        raise ValueError("weight matrix shape {} does not match {} values".format(weights.shape, len(values)))
    shapes = {np.shape(v) for v in values}
    if len(shapes) != 1:
        raise ValueError("all consensus values must share one shape, got {}".format(sorted(shapes)))
    stacked = np.stack([np.asarray(v, dtype=float) for v in values])
    mixed = np.tensordot(weights, stacked, axes=(1, 0))
    return list(mixed)


class TimeVaryingNetwork(object):
    """
    Seeded generator of graph snapshots indexed by (outer iteration t, inner round s).

    Snapshot (t, s) depends only on (seed, t, s). A static network returns the same snapshot
    for every index.
    """

    def __init__(self, n_nodes, edge_prob, directed=True, seed=0, static=False, dump_dir=None):
        if n_nodes < 1:
            raise ValueError("node count must be positive, got {}".format(n_nodes))
        if not 0.0 <= edge_prob <= 1.0:
            raise ValueError("edge probability must lie in [0, 1], got {}".format(edge_prob))
        self.n_nodes = n_nodes
        self.edge_prob = edge_prob
        self.directed = directed
        self.seed = seed
        self.static = static
        self.dump_dir = dump_dir

    def snapshot(self, t, s):
        if self.static:
            t, s = 0, 0
        rng = np.random.default_rng([self.seed, t, s])
        return gen_er_snapshot(self.n_nodes, self.edge_prob, self.directed, rng)

    def weights_for(self, graph):
        return push_weights(graph) if self.directed else metropolis_weights(graph)

    def weights(self, t, s):
        return self.weights_for(self.snapshot(t, s))

    def dump(self, t, s, graph, weights):
        """
        Write the adjacency and weight matrices of snapshot (t, s) as CSV into ``dump_dir``.
        """
        if not os.path.isdir(self.dump_dir):
            os.makedirs(self.dump_dir)
        write_matrix_csv(os.path.join(self.dump_dir, "adjacency_t{}_s{}.csv".format(t, s)), graph.adjacency())
        write_matrix_csv(os.path.join(self.dump_dir, "weights_t{}_s{}.csv".format(t, s)), weights)


def consensus_average(values, net, t, rounds):
    """
    Run ``rounds`` consensus rounds for outer iteration ``t``, drawing a fresh snapshot for each
    round. Round t_c mixes with the weights of snapshot (t, t_c + 1).
    """
    if rounds < 0:
        raise ValueError("number of consensus rounds must be non-negative, got {}".format(rounds))
    mixed = list(values)
    for t_c in range(rounds):
        graph = net.snapshot(t, t_c + 1)
        weights = net.weights_for(graph)
        if net.dump_dir:
            net.dump(t, t_c + 1, graph, weights)
        mixed = consensus_round(mixed, weights)
    return mixed


def is_strongly_connected(snapshots):
    """
    True iff the union of the snapshots' edge sets is a strongly connected digraph.
    """
    snapshots = list(snapshots)
    if not snapshots:
        raise ValueError("at least one snapshot is required")
    n_nodes = snapshots[0].n_nodes
    if any(g.n_nodes != n_nodes for g in snapshots):
        raise ValueError("snapshots must share the node count")
    union = nx.DiGraph()
    union.add_nodes_from(range(n_nodes))
    for graph in snapshots:
        union.add_edges_from(graph.edges)
    return nx.is_strongly_connected(union)
