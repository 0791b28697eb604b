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
Numeric validation of the deterministic inequalities behind the DMSP convergence analysis.

Every check samples orthogonal matrices at a prescribed Frobenius distance from a random
signed permutation and evaluates one inequality per sample. A sample violates the inequality
only when it fails by more than TOLERANCE. Margins are reported as (bound - observed) so a
negative worst margin flags a violation.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm
from scipy.optimize import brentq

from dmsp.data_model import expected_gradient, monte_carlo_gradient, partition_columns
from dmsp.dmsp_error import InvariantViolationError
from dmsp.matrix_core import SignedPermutation, hadamard_pow3, orthogonality_defect, sigma_min

logger = logging.getLogger(__name__)

TOLERANCE = 1e-9
BALL_TOLERANCE = 1e-10
SEED_BOUND = 2 ** 32


@dataclass
class CheckReport(object):
    """
    Outcome of one check over a batch of trials.
    """
    name: str
    trials: int = 0
    violations: int = 0
    worst_margin: float = math.inf
    params: dict = field(default_factory=dict)

    CSV_COLUMNS = ('check', 'trials', 'violations', 'worst_margin', 'n', 'theta', 'epsilon', 'p', 'alpha',
                   'eps_max_thm1', 'eps_max_thm2', 'mc_max_rel_error')

    @property
    def passed(self):
        return self.violations == 0

    def record(self, margin):
        self.trials += 1
        self.worst_margin = min(self.worst_margin, margin)
        if margin < -TOLERANCE:
            self.violations += 1

    def merge(self, other):
        """
        Combine the reports of two disjoint trial batches of the same check.
        """
        if other.name != self.name:
            raise ValueError("cannot merge report {} into {}".format(other.name, self.name))
        merged = CheckReport(self.name, self.trials + other.trials, self.violations + other.violations,
                             min(self.worst_margin, other.worst_margin), dict(self.params))
        for key, value in other.params.items():
            if key == 'mc_max_rel_error' and key in merged.params:
                merged.params[key] = max(merged.params[key], value)
            else:
                merged.params.setdefault(key, value)
        return merged

    def to_row(self):
        row = [self.name, self.trials, self.violations, repr(float(self.worst_margin))]
        for key in self.CSV_COLUMNS[4:]:
            value = self.params.get(key)
            row.append('' if value is None else repr(value))
        return row


def eps_max_theorem1(n, theta, alpha):
    return (alpha - theta) / (2 * alpha * n * (1 - theta) + 3 * math.sqrt(2) * (1 + alpha) * (1 - theta)
                              + alpha * theta)


def eps_max_theorem2(n, theta, alpha):
    return (alpha - theta) / (2 * alpha * n * (1 - theta) + 3 * math.sqrt(2) * (1 - alpha) * (1 + theta)
                              + alpha * theta)


def random_skew(n, rng):
    """
    Random skew-symmetric matrix with unit Frobenius norm.
    """
    if n < 2:
        raise ValueError("skew-symmetric directions need n >= 2, got {}".format(n))
    gaussian = rng.standard_normal((n, n))
    skew = gaussian - gaussian.T
    return skew / np.linalg.norm(skew)


def plane_skew(n, i, j):
    """
    Unit skew-symmetric generator of a rotation in the (i, j) plane.
    """
    skew = np.zeros((n, n))
    skew[i, j] = 1.0 / math.sqrt(2.0)
    skew[j, i] = -1.0 / math.sqrt(2.0)
    return skew


def perturb_orthogonal(base, radius, rng, direction=None):
    """
    Move ``base`` along the geodesic base @ expm(s S) until ||U - base||_F = radius.

    With S having eigenvalues +-i lambda_k, ||expm(s S) - I||_F^2 = sum_k 4 sin^2(s lambda_k / 2),
    so the step s is found by root finding on that scalar function.
    """
    base = np.asarray(base, dtype=float)
    if radius == 0:
        return base.copy()
    skew = random_skew(base.shape[0], rng) if direction is None else direction
    lambdas = np.linalg.eigvalsh(1j * skew)

    def distance_gap(step):
        return math.sqrt(float(np.sum(4.0 * np.sin(step * lambdas / 2.0) ** 2))) - radius

    upper = 2.0 * radius
    while distance_gap(upper) <= 0:
        upper *= 1.5
        if upper * np.max(np.abs(lambdas)) > math.pi:
            raise ValueError("radius {} is out of reach along the chosen direction".format(radius))
    step = brentq(distance_gap, 0.0, upper, xtol=1e-15)
    return base @ expm(step * skew)


def _validate_ball(u_mat, center, radius):
    distance = float(np.linalg.norm(u_mat - center))
    if abs(distance - radius) > BALL_TOLERANCE:
        raise InvariantViolationError("ball sample at distance {} instead of {}".format(distance, radius))
    if orthogonality_defect(u_mat) > BALL_TOLERANCE:
        raise InvariantViolationError("ball sample is not orthogonal: defect {}".format(orthogonality_defect(u_mat)))


def sample_ball(n, radius, rng, center=None, direction=None):
    """
    Orthogonal U with ||U - P||_F = radius for a signed permutation P (random unless given).

    :return: (U, P)
    """
    if center is None:
        center = SignedPermutation.random(n, rng).to_matrix()
    u_mat = perturb_orthogonal(center, radius, rng, direction)
    _validate_ball(u_mat, center, radius)
    return u_mat, center


def _trial_rngs(rng, trials):
    return [np.random.default_rng(int(s)) for s in rng.integers(SEED_BOUND, size=trials)]


def lemma4_margin(u_mat, p_mat, epsilon):
    """
    min over the support of P of |u_ij| - (1 - epsilon^2 / 2).
    """
    support = p_mat != 0
    return float(np.min(np.abs(u_mat[support]))) - (1.0 - 0.5 * epsilon ** 2)


def lemma5_margin(u_mat, epsilon):
    """
    2 epsilon - max_{i != j} |u_i^3 . u_j|.
    """
    cross = hadamard_pow3(u_mat) @ u_mat.T
    np.fill_diagonal(cross, 0.0)
    return 2.0 * epsilon - float(np.max(np.abs(cross)))


def lemma7_margin(u_mat, v_mat, epsilon):
    """
    3 sqrt(2) epsilon ||U - V||_F - ||U^3 - V^3||_F.
    """
    lhs = float(np.linalg.norm(hadamard_pow3(u_mat) - hadamard_pow3(v_mat)))
    return 3.0 * math.sqrt(2.0) * epsilon * float(np.linalg.norm(u_mat - v_mat)) - lhs


def lemma6_margin(u_mat, p, theta, epsilon):
    """
    sigma_n(E[(U X)^3 X^T]) minus its lower bound, divided by 3p. None when the bound is vacuous.
    """
    n = u_mat.shape[0]
    if 1.0 - 2.0 * n * epsilon <= 0:
        return None
    bound = 3.0 * p * theta * (1 - theta) * (1 - 2.0 * n * epsilon) + 3.0 * p * theta ** 2
    return (sigma_min(expected_gradient(u_mat, p, theta)) - bound) / (3.0 * p)


def theorem2_margin(u_mat, node_mats, node_sizes, theta, alpha):
    """
    alpha delta - 2 ||E[B] - sum_i E[B_i]||_F / (sigma_n(E[B]) + sigma_n(sum_i E[B_i])),
    with delta = max_i ||U - U_i||_F and p = sum of the node sizes.
    """
    p = sum(node_sizes)
    b_mean = expected_gradient(u_mat, p, theta)
    b_nodes = sum(expected_gradient(u_i, p_i, theta) for u_i, p_i in zip(node_mats, node_sizes))
    ratio = 2.0 * float(np.linalg.norm(b_mean - b_nodes)) / (sigma_min(b_mean) + sigma_min(b_nodes))
    delta = max(float(np.linalg.norm(u_mat - u_i)) for u_i in node_mats)
    return alpha * delta - ratio


def check_lemma4(n, epsilon, trials, rng, construction='geodesic'):
    """
    |u_ij| >= 1 - epsilon^2 / 2 wherever p_ij != 0, for U in O(n) with ||U - P||_F = epsilon.

    ``construction='plane'`` rotates a single coordinate plane, which concentrates the deviation
    in two rows and brings the bound close to tight for small epsilon.
    """
    report = CheckReport('lemma4', params={'n': n, 'epsilon': epsilon})
    for trial_rng in _trial_rngs(rng, trials):
        direction = None
        if construction == 'plane':
            i, j = trial_rng.choice(n, size=2, replace=False)
            direction = plane_skew(n, int(i), int(j))
        u_mat, p_mat = sample_ball(n, epsilon, trial_rng, direction=direction)
        report.record(lemma4_margin(u_mat, p_mat, epsilon))
    return report


def check_lemma5(n, epsilon, trials, rng):
    """
    |u_i^3 . u_j| <= 2 epsilon for every row pair i != j.
    """
    report = CheckReport('lemma5', params={'n': n, 'epsilon': epsilon})
    for trial_rng in _trial_rngs(rng, trials):
        u_mat, _ = sample_ball(n, epsilon, trial_rng)
        report.record(lemma5_margin(u_mat, epsilon))
    return report


def check_lemma7(n, epsilon, trials, rng):
    """
    ||U^3 - V^3||_F <= 3 sqrt(2) epsilon ||U - V||_F for U, V within epsilon of one signed permutation.
    U sits on the sphere of radius epsilon, V at a uniform radius inside it.
    """
    report = CheckReport('lemma7', params={'n': n, 'epsilon': epsilon})
    for trial_rng in _trial_rngs(rng, trials):
        u_mat, p_mat = sample_ball(n, epsilon, trial_rng)
        v_mat, _ = sample_ball(n, trial_rng.uniform(0.0, epsilon), trial_rng, center=p_mat)
        report.record(lemma7_margin(u_mat, v_mat, epsilon))
    return report


def check_lemma2_and_6(n, theta, epsilon, p, trials, rng, mc_trials=1, mc_batches=10, mc_tolerance=0.02):
    """
    (a) Monte-Carlo estimates of E[(U X)^3 X^T] match the closed form within ``mc_tolerance``
    relative Frobenius error on the first ``mc_trials`` trials.
    (b) sigma_n of the closed form respects its lower bound whenever 1 - 2 n epsilon > 0.
    """
    report = CheckReport('lemma2_and_6', params={'n': n, 'theta': theta, 'epsilon': epsilon, 'p': p})
    worst_rel = 0.0
    for idx, trial_rng in enumerate(_trial_rngs(rng, trials)):
        u_mat, _ = sample_ball(n, epsilon, trial_rng)
        margin = lemma6_margin(u_mat, p, theta, epsilon)
        if idx < mc_trials:
            analytic = expected_gradient(u_mat, p, theta)
            estimate = monte_carlo_gradient(u_mat, p, theta, trial_rng, batches=mc_batches)
            rel = float(np.linalg.norm(estimate - analytic) / np.linalg.norm(analytic))
            worst_rel = max(worst_rel, rel)
            mc_margin = mc_tolerance - rel
            margin = mc_margin if margin is None else min(margin, mc_margin)
        if margin is not None:
            report.record(margin)
    report.params['mc_max_rel_error'] = worst_rel
    return report


def check_theorem2(n, theta, alpha, epsilon, trials, rng, n_nodes=4, p=10000, delta=None):
    """
    Deterministic contraction bound: with U and every U_i within epsilon of a common signed
    permutation, the expectation-level perturbation ratio stays below alpha * delta.

    :param delta: when given, every node sits at exactly this distance from U, probing the
        behaviour near consensus
    """
    if not theta < alpha < 1:
        raise ValueError("alpha must lie in (theta, 1), got {}".format(alpha))
    eps_max = eps_max_theorem2(n, theta, alpha)
    if not 0 <= epsilon < eps_max:
        raise ValueError("epsilon {} outside the admissible range [0, {})".format(epsilon, eps_max))
    if delta is not None and not 0 < delta < epsilon:
        raise ValueError("delta must lie in (0, epsilon), got {}".format(delta))

    node_sizes = [stop - start for start, stop in partition_columns(p, n_nodes)]
    report = CheckReport('theorem2', params={'n': n, 'theta': theta, 'epsilon': epsilon, 'p': p, 'alpha': alpha,
                                             'eps_max_thm1': eps_max_theorem1(n, theta, alpha),
                                             'eps_max_thm2': eps_max})
    for trial_rng in _trial_rngs(rng, trials):
        if delta is None:
            u_mat, p_mat = sample_ball(n, trial_rng.uniform(0.0, epsilon), trial_rng)
            nodes = [sample_ball(n, trial_rng.uniform(0.0, epsilon), trial_rng, center=p_mat)[0]
                     for _ in range(n_nodes)]
        else:
            u_mat, p_mat = sample_ball(n, trial_rng.uniform(0.0, epsilon - delta), trial_rng)
            nodes = [sample_ball(n, delta, trial_rng, center=u_mat)[0] for _ in range(n_nodes)]
        report.record(theorem2_margin(u_mat, nodes, node_sizes, theta, alpha))
    return report


def default_grid(rng, trials=500, p=100000, alpha=0.5):
    """
    Run every check over n in {3, 4, 5, 6}, theta in {0.1, 0.3} and admissible epsilons.

    :return: list of CheckReport
    """
    reports = []
    for n in (3, 4, 5, 6):
        for epsilon in (0.1, 0.5, 1.0):
            reports.append(check_lemma4(n, epsilon, trials, rng))
        for epsilon in (0.1, 0.3, 1.0):
            reports.append(check_lemma5(n, epsilon, trials, rng))
        for epsilon in (0.1, 0.4, 0.99):
            reports.append(check_lemma7(n, epsilon, trials, rng))
        for theta in (0.1, 0.3):
            reports.append(check_lemma2_and_6(n, theta, 0.25 / n, p, trials, rng))
            eps_max = eps_max_theorem2(n, theta, alpha)
            for fraction in (0.5, 0.99):
                reports.append(check_theorem2(n, theta, alpha, fraction * eps_max, trials, rng))
    for report in reports:
        log = logger.info if report.passed else logger.error
        log("%s %s: %d/%d violations, worst margin %.3e", report.name, report.params,
            report.violations, report.trials, report.worst_margin)
    return reports
