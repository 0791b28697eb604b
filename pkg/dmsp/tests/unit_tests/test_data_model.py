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

from dmsp.data_model import (ProblemInstance, expected_cubic_correlation, expected_gradient, make_instance,
                             monte_carlo_gradient, partition_columns, sample_bg)
from dmsp.matrix_core import is_orthogonal, random_orthogonal
from helper.truncation import truncate, truncation_rate


# noinspection PyClassHasNoInit
class TestSampleBg:

    def test_statistics(self):
        theta = 0.3
        x_mat = sample_bg(50, 20000, theta, np.random.default_rng(0))
        assert x_mat.shape == (50, 20000)
        assert np.mean(x_mat != 0) == pytest.approx(theta, abs=0.005)
        assert np.mean(x_mat ** 2) == pytest.approx(theta, abs=0.01)

    def test_seeded(self):
        np.testing.assert_array_equal(sample_bg(4, 10, 0.5, np.random.default_rng(3)),
                                      sample_bg(4, 10, 0.5, np.random.default_rng(3)))

    @pytest.mark.parametrize('theta', [0.0, 1.0, -0.1, 1.5])
    def test_bad_theta(self, theta):
        with pytest.raises(ValueError, match="theta must lie in"):
            sample_bg(3, 3, theta, np.random.default_rng(0))


# noinspection PyClassHasNoInit
class TestPartition:

    def test_leftover_goes_to_first_nodes(self):
        assert partition_columns(10, 3) == [(0, 4), (4, 7), (7, 10)]

    def test_sizes_balanced(self):
        sizes = [stop - start for start, stop in partition_columns(10000, 36)]
        assert sum(sizes) == 10000
        assert max(sizes) - min(sizes) <= 1

    def test_single_node(self):
        assert partition_columns(5, 1) == [(0, 5)]

    def test_too_many_nodes(self):
        with pytest.raises(ValueError, match="exceeds the number of samples"):
            partition_columns(3, 4)

    def test_no_nodes(self):
        with pytest.raises(ValueError, match="node count must be positive"):
            partition_columns(3, 0)


# noinspection PyClassHasNoInit
class TestInstance:

    def test_make_instance(self):
        inst = make_instance(6, 100, 0.2, 5, np.random.default_rng(7))
        assert is_orthogonal(inst.D_o)
        np.testing.assert_allclose(inst.Y, inst.D_o @ inst.X)
        assert inst.n_nodes == 5
        np.testing.assert_array_equal(np.hstack(inst.local_blocks()), inst.Y)
        assert inst.local(0).shape == (6, 20)

    def test_from_observations(self):
        inst = ProblemInstance.from_observations(np.ones((3, 7)), 2)
        assert inst.D_o is None and inst.X is None
        assert inst.partition == [(0, 4), (4, 7)]
        assert (inst.n, inst.p) == (3, 7)


# noinspection PyClassHasNoInit
class TestExpectations:

    def test_monte_carlo_matches_closed_form(self):
        rng = np.random.default_rng(21)
        u_mat = random_orthogonal(5, rng)
        analytic = expected_gradient(u_mat, 200000, 0.3)
        estimate = monte_carlo_gradient(u_mat, 200000, 0.3, rng, batches=5)
        assert np.linalg.norm(estimate - analytic) / np.linalg.norm(analytic) < 0.01

    def test_gradient_at_identity(self):
        np.testing.assert_allclose(expected_gradient(np.eye(3), 100, 0.25), 3 * 100 * 0.25 * np.eye(3))

    def test_cubic_correlation_structure(self):
        p, theta = 1000, 0.2
        corr = expected_cubic_correlation(np.eye(4), p, theta)
        np.testing.assert_allclose(corr, 3 * p * theta * np.eye(4))
        u_mat = random_orthogonal(4, np.random.default_rng(2))
        np.testing.assert_allclose(expected_cubic_correlation(u_mat, p, theta),
                                   expected_gradient(u_mat, p, theta) @ u_mat.T, atol=1e-9)


def test_identity_monte_carlo_diagonal():
    p, theta = 100000, 0.5
    estimate = monte_carlo_gradient(np.eye(3), p, theta, np.random.default_rng(12), batches=20)
    np.testing.assert_allclose(np.diag(estimate), 3 * p * 0.25 + 3 * p * 0.25, rtol=0.02)


def test_truncation_at_log_p_rarely_bites():
    p = 10000
    x_mat = sample_bg(25, p, 0.1, np.random.default_rng(13))
    assert truncation_rate(x_mat, np.log(p)) <= 1e-6
    np.testing.assert_array_equal(truncate(x_mat, np.log(p)), x_mat)
    np.testing.assert_array_equal(truncate(np.array([[0.5, -3.0]]), 1.0), [[0.5, 0.0]])
    assert truncation_rate(np.array([[0.5, -3.0]]), 1.0) == 0.5


# noinspection PyClassHasNoInit
class TestInstanceDump:

    def test_synthetic_instance_round_trip(self, tmp_path):
        inst = make_instance(6, 50, 0.3, 4, np.random.default_rng(14))
        inst.dump(str(tmp_path / 'instance'))
        loaded = ProblemInstance.load(str(tmp_path / 'instance'))

        assert sorted(os.listdir(str(tmp_path / 'instance'))) == ['D_o.bin', 'X.bin', 'Y.bin', 'partition.bin',
                                                                  'theta.bin']
        assert (loaded.n, loaded.p, loaded.theta, loaded.partition) == (6, 50, 0.3, inst.partition)
        for name in ('D_o', 'X', 'Y'):
            np.testing.assert_array_equal(getattr(loaded, name), getattr(inst, name))

    def test_observations_only(self, tmp_path):
        inst = ProblemInstance.from_observations(np.arange(12.0).reshape(3, 4), 2)
        inst.dump(str(tmp_path))
        loaded = ProblemInstance.load(str(tmp_path))
        assert loaded.D_o is None and loaded.X is None and loaded.theta is None
        assert loaded.partition == [(0, 2), (2, 4)]
        np.testing.assert_array_equal(loaded.local(1), inst.local(1))
