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
Synthetic problems under the Bernoulli-Gaussian model and column partitioning across nodes.
"""
import os
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from dmsp.matrix_core import hadamard_pow3, random_orthogonal
from dmsp.protocol.matrix_codec import read_matrix, write_matrix


def sample_bg(n, p, theta, rng):
    """
    Bernoulli-Gaussian random matrix: each entry is a Bernoulli(theta) mask times a standard normal.

    Parameters
    ----------
    n, p: int
        Shape of the sample.
    theta: float
        Sparsity level, strictly between 0 and 1.
    rng: numpy.random.Generator
        Seeded stream; the mask is drawn before the Gaussian values.
    """
    if not 0.0 < theta < 1.0:
        raise ValueError("theta must lie in (0, 1), got {}".format(theta))
    mask = rng.random((n, p)) < theta
    values = rng.standard_normal((n, p))
    return np.where(mask, values, 0.0)


def partition_columns(p, n_nodes):
    """
    Split [0, p) into ``n_nodes`` contiguous ranges whose sizes differ by at most one.
    The p mod N leftover columns go to the lowest-indexed nodes.

    :return: list of (start, stop) tuples
    """
    if n_nodes < 1:
        raise ValueError("node count must be positive, got {}".format(n_nodes))
    if n_nodes > p:
        raise ValueError("node count N={} exceeds the number of samples p={}".format(n_nodes, p))
    base, extra = divmod(p, n_nodes)
    ranges = []
    start = 0
    for i in range(n_nodes):
        stop = start + base + (1 if i < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


@dataclass
class ProblemInstance(object):
    """
    Observations Y split column-wise across nodes, with the ground truth when it is known.
    Synthetic instances satisfy Y = D_o X exactly; instances built from real data
    (image patches) carry no D_o or X.
    """
    n: int
    p: int
    theta: Optional[float]
    D_o: Optional[np.ndarray]
    X: Optional[np.ndarray]
    Y: np.ndarray
    partition: List[Tuple[int, int]]

    @property
    def n_nodes(self):
        return len(self.partition)

    def local(self, node):
        start, stop = self.partition[node]
        return self.Y[:, start:stop]

    def local_blocks(self):
        return [self.local(i) for i in range(self.n_nodes)]

    @classmethod
    def from_observations(cls, y_mat, n_nodes):
        y_mat = np.asarray(y_mat, dtype=float)
        n, p = y_mat.shape
        return cls(n, p, None, None, None, y_mat, partition_columns(p, n_nodes))

    def dump(self, directory):
        """
        Write the instance as binary matrix dumps into ``directory``: Y.bin and partition.bin
        (one start,stop row per node), plus D_o.bin, X.bin and theta.bin when they are known.
        """
        if not os.path.isdir(directory):
            os.makedirs(directory)
        write_matrix(os.path.join(directory, "Y.bin"), self.Y)
        write_matrix(os.path.join(directory, "partition.bin"), np.array(self.partition, dtype=float).reshape(-1, 2))
        for name, value in (("D_o", self.D_o), ("X", self.X)):
            if value is not None:
                write_matrix(os.path.join(directory, name + ".bin"), value)
        if self.theta is not None:
            write_matrix(os.path.join(directory, "theta.bin"), [[self.theta]])

    @classmethod
    def load(cls, directory):
        def optional(name):
            path = os.path.join(directory, name + ".bin")
            return read_matrix(path) if os.path.exists(path) else None

        y_mat = read_matrix(os.path.join(directory, "Y.bin"))
        partition = [(int(start), int(stop)) for start, stop in read_matrix(os.path.join(directory, "partition.bin"))]
        theta = optional("theta")
        return cls(y_mat.shape[0], y_mat.shape[1], None if theta is None else float(theta[0, 0]), optional("D_o"),
                   optional("X"), y_mat, partition)


def make_instance(n, p, theta, n_nodes, rng):
    """
    Draw D_o Haar-uniformly, X ~ BG(theta) and set Y = D_o X, sliced evenly over ``n_nodes``.
    """
    partition = partition_columns(p, n_nodes)
    d_o = random_orthogonal(n, rng)
    x_mat = sample_bg(n, p, theta, rng)
    return ProblemInstance(n, p, theta, d_o, x_mat, d_o @ x_mat, partition)


def expected_gradient(u_mat, p, theta):
    """
    Closed form of E[(U X)^3 X^T] for orthogonal U and X ~ BG(theta) with p columns.
    """
    u_mat = np.asarray(u_mat, dtype=float)
    return 3.0 * p * theta * (1.0 - theta) * hadamard_pow3(u_mat) + 3.0 * p * theta ** 2 * u_mat


def expected_cubic_correlation(u_mat, p, theta):
    """
    Closed form of E[(U X)^3 (U X)^T]: 3 p theta (1 - theta) U^3 U^T + 3 p theta^2 I.
    """
    u_mat = np.asarray(u_mat, dtype=float)
    n = u_mat.shape[0]
    return 3.0 * p * theta * (1.0 - theta) * hadamard_pow3(u_mat) @ u_mat.T + 3.0 * p * theta ** 2 * np.eye(n)


def monte_carlo_gradient(u_mat, p, theta, rng, batches=1):
    """
    Average of (U X)^3 X^T over ``batches`` fresh draws of X with p columns each.
    """
    u_mat = np.asarray(u_mat, dtype=float)
    n = u_mat.shape[0]
    total = np.zeros((n, n))
    for _ in range(batches):
        x_mat = sample_bg(n, p, theta, rng)
        total += hadamard_pow3(u_mat @ x_mat) @ x_mat.T
    return total / batches
