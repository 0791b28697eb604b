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
Dense matrix primitives for l4-norm dictionary learning.

Matrices are plain ``numpy.ndarray`` objects of dtype float64. Random streams are
always passed in explicitly as ``numpy.random.Generator`` instances.
"""
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

DEGENERATE_RATIO = 1e-12


class DegenerateProjectionWarning(UserWarning):
    """
    Polar projection of a (numerically) rank deficient matrix; the polar factor is not unique.
    """


def _check_square(name, mat):
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("{} must be a square matrix, got shape {}".format(name, mat.shape))


def _check_finite(name, mat):
    if not np.all(np.isfinite(mat)):
        raise ValueError("{} contains NaN or Inf entries".format(name))


def l4_norm4(mat):
    """
    Fourth power of the element-wise l4-norm, i.e. the sum of m_ij^4.
    """
    mat = np.asarray(mat, dtype=float)
    return float(np.sum(np.square(np.square(mat))))


def hadamard_pow3(mat):
    """
    Entry-wise cube.
    """
    mat = np.asarray(mat, dtype=float)
    return mat * mat * mat


def polar_project(z_mat):
    """
    Project a square matrix onto the orthogonal group.

    Returns Q = U V^T from the SVD Z = U S V^T. Only the product U V^T is exposed, so the
    sign ambiguity of the singular vectors cancels and no sign normalization is applied.
    The result is invariant to positive rescaling of ``z_mat``.

    Parameters
    ----------
    z_mat : numpy.ndarray
        Square, finite matrix.

    Returns
    -------
    numpy.ndarray
        The orthogonal polar factor, maximizing <Q, Z> over O(n).

    Warns
    -----
    DegenerateProjectionWarning
        When sigma_n / sigma_1 < 1e-12. The projection still returns a result.
    """
    z_mat = np.asarray(z_mat, dtype=float)
    _check_square("Z", z_mat)
    _check_finite("Z", z_mat)

    u_mat, sigma, vt_mat = np.linalg.svd(z_mat)
    # numpy returns singular values in descending order
    if sigma[0] == 0.0 or sigma[-1] / sigma[0] < DEGENERATE_RATIO:
        warnings.warn("polar projection of a rank deficient matrix (sigma_min/sigma_max = {:.3e})"
                      .format(sigma[-1] / sigma[0] if sigma[0] > 0 else 0.0),
                      DegenerateProjectionWarning, stacklevel=2)
    return u_mat @ vt_mat


def random_orthogonal(n, rng):
    """
    Haar-distributed orthogonal matrix from the QR factorization of a Gaussian matrix.

    :param n: dimension, at least 1
    :param rng: numpy.random.Generator
    :return: n x n orthogonal matrix
    """
    if n < 1:
        raise ValueError("n must be at least 1, got {}".format(n))
    gaussian = rng.standard_normal((n, n))
    q_mat, r_mat = np.linalg.qr(gaussian)
    signs = np.sign(np.diag(r_mat))
    signs[signs == 0] = 1.0
    return q_mat * signs[np.newaxis, :]


def orthogonality_defect(q_mat):
    """
    Frobenius norm of Q Q^T - I.
    """
    q_mat = np.asarray(q_mat, dtype=float)
    return float(np.linalg.norm(q_mat @ q_mat.T - np.eye(q_mat.shape[0])))


def is_orthogonal(q_mat, tol=1e-10):
    q_mat = np.asarray(q_mat, dtype=float)
    if q_mat.ndim != 2 or q_mat.shape[0] != q_mat.shape[1]:
        return False
    eye = np.eye(q_mat.shape[0])
    return (np.linalg.norm(q_mat @ q_mat.T - eye) <= tol and
            np.linalg.norm(q_mat.T @ q_mat - eye) <= tol)


@dataclass(frozen=True)
class SignedPermutation(object):
    """
    Signed permutation: row i of the matrix form holds signs[i] at column perm[i].
    """
    perm: tuple
    signs: tuple

    def __post_init__(self):
        if len(self.perm) != len(self.signs):
            raise ValueError("perm and signs must have the same length")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a bijection on [n]: {}".format(self.perm))
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1: {}".format(self.signs))

    @property
    def n(self):
        return len(self.perm)

    def to_matrix(self):
        mat = np.zeros((self.n, self.n))
        mat[np.arange(self.n), list(self.perm)] = self.signs
        return mat

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def random(cls, n, rng):
        perm = tuple(int(i) for i in rng.permutation(n))
        signs = tuple(int(s) for s in rng.choice([-1, 1], size=n))
        return cls(perm, signs)


def nearest_signed_permutation(u_mat):
    """
    Signed permutation P minimizing ||U - P||_F.

    ||U - P||_F^2 = ||U||_F^2 + n - 2 sum_i s_i u_{i, pi(i)}, so the optimal pi is a maximum
    weight assignment on |u_ij| (Hungarian method) and each sign follows the matched entry.
    """
    u_mat = np.asarray(u_mat, dtype=float)
    _check_square("U", u_mat)
    rows, cols = linear_sum_assignment(np.abs(u_mat), maximize=True)
    perm = [0] * u_mat.shape[0]
    signs = [1] * u_mat.shape[0]
    for row, col in zip(rows, cols):
        perm[row] = int(col)
        signs[row] = -1 if u_mat[row, col] < 0 else 1
    return SignedPermutation(tuple(perm), tuple(signs))


def gersgorin_sigma_min_bound(a_mat):
    """
    Gersgorin-type lower bound on the smallest singular value:

        min_i |a_ii| - (sum_{j != i} |a_ij| + sum_{j != i} |a_ji|) / 2

    The value may be negative, in which case it carries no information.
    """
    a_mat = np.asarray(a_mat, dtype=float)
    _check_square("A", a_mat)
    abs_a = np.abs(a_mat)
    diag = np.diag(abs_a)
    row_off = abs_a.sum(axis=1) - diag
    col_off = abs_a.sum(axis=0) - diag
    return float(np.min(diag - 0.5 * (row_off + col_off)))


def sigma_min(a_mat):
    return float(np.linalg.svd(np.asarray(a_mat, dtype=float), compute_uv=False)[-1])
