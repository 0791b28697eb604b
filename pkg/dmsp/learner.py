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
MSP and DMSP iterations and the metrics used to compare them.

MSP repeats A <- polar(4 (A Y)^3 Y^T). DMSP lets every node compute that gradient on its own
columns, mixes the gradients by consensus averaging and projects locally. Because the
gradient is separable over column blocks and the projection ignores positive scaling, exact
consensus makes every node reproduce the MSP iterate.
"""
import csv
import logging
import time
import warnings
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np

from dmsp.matrix_core import DegenerateProjectionWarning, hadamard_pow3, l4_norm4, polar_project
from dmsp.network import consensus_average

logger = logging.getLogger(__name__)

MSP_NODE = 'msp'


@dataclass
class DmspState(object):
    """
    Per-node dictionary estimates A_i (row i of A is an analysis atom) and the outer iteration counter.
    """
    A_list: List[np.ndarray]
    t: int = 0


@dataclass
class TraceRecord(object):
    t: int
    node: Union[int, str]
    recovery_error: Optional[float] = None
    delta: Optional[float] = None
    delta_c: Optional[float] = None
    objective: Optional[float] = None
    wall_ms: Optional[float] = None
    delta_a: Optional[float] = None


def _csv_value(value):
    if value is None:
        return ''
    if isinstance(value, float):
        return repr(value)
    return str(value)


class MetricsTrace(object):
    """
    Per-iteration records of one MSP or DMSP run, one record per node and completed outer iteration.
    """
    CSV_COLUMNS = ['t', 'node', 'recovery_error', 'delta', 'delta_c', 'objective', 'wall_ms', 'delta_a']

    def __init__(self):
        self.records = []
        self._by_t = {}
        self.iterates = []
        self.initial_objective = None
        self.degenerate_projections = 0

    def append(self, record):
        self.records.append(record)
        self._by_t.setdefault(record.t, []).append(record)

    def iterations(self):
        return sorted(self._by_t)

    def records_at(self, t):
        return list(self._by_t.get(t, ()))

    def max_recovery_error(self, t=None):
        if not self.records:
            return None
        t = max(self._by_t) if t is None else t
        errors = [r.recovery_error for r in self.records_at(t) if r.recovery_error is not None]
        return max(errors) if errors else None

    def final_max_recovery_error(self):
        return self.max_recovery_error()

    def objectives(self, node=MSP_NODE):
        return [r.objective for r in self.records if r.node == node]

    def series(self, field):
        """
        One value of a run-wide quantity (delta, delta_c, delta_a) per outer iteration.
        """
        return [getattr(self._by_t[t][0], field) for t in self.iterations()]

    def rows(self, record_timing=False):
        for r in self.records:
            wall_ms = round(r.wall_ms, 3) if (record_timing and r.wall_ms is not None) else None
            yield [_csv_value(v) for v in (r.t, r.node, r.recovery_error, r.delta, r.delta_c,
                                           r.objective, wall_ms, r.delta_a)]

    def write_csv(self, f, record_timing=False):
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(self.CSV_COLUMNS)
        for row in self.rows(record_timing):
            writer.writerow(row)


def local_gradient(a_mat, y_loc):
    """
    4 (A Y_loc)^3 Y_loc^T, the gradient of ||A Y_loc||_4^4 with respect to A.
    """
    a_mat = np.asarray(a_mat, dtype=float)
    y_loc = np.asarray(y_loc, dtype=float)
    if a_mat.shape[1] != y_loc.shape[0]:
        raise ValueError("shapes {} and {} do not conform".format(a_mat.shape, y_loc.shape))
    return 4.0 * hadamard_pow3(a_mat @ y_loc) @ y_loc.T


def objective(a_mat, y_mat):
    return l4_norm4(np.asarray(a_mat) @ np.asarray(y_mat))


def recovery_error(a_mat, d_o):
    """
    |1 - ||A D_o||_4^4 / n|; zero exactly when A D_o is a signed permutation.
    """
    a_mat = np.asarray(a_mat, dtype=float)
    d_o = np.asarray(d_o, dtype=float)
    if a_mat.shape[1] != d_o.shape[0]:
        raise ValueError("shapes {} and {} do not conform".format(a_mat.shape, d_o.shape))
    return abs(1.0 - l4_norm4(a_mat @ d_o) / d_o.shape[0])


def deviation_delta(a_msp, state):
    """
    max_i ||A - A_i||_F between the MSP iterate and every node of a DMSP state at the same t.
    """
    return max(float(np.linalg.norm(a_msp - a_i)) for a_i in state.A_list)


def consensus_deviation(values_after, exact_mean):
    """
    max_i ||value_i - exact_mean||_F.
    """
    exact_mean = np.asarray(exact_mean, dtype=float)
    for value in values_after:
        if np.shape(value) != exact_mean.shape:
            raise ValueError("value shape {} does not match {}".format(np.shape(value), exact_mean.shape))
    return max(float(np.linalg.norm(value - exact_mean)) for value in values_after)


def _project(grad, trace, node=None):
    """
    polar_project that counts degenerate projections on ``trace`` and re-emits the warning,
    tagged with the node id for DMSP.
    """
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateProjectionWarning)
        q_mat = polar_project(grad)
    for w in caught:
        if issubclass(w.category, DegenerateProjectionWarning):
            trace.degenerate_projections += 1
            message = str(w.message) if node is None else "node {}: {}".format(node, w.message)
            warnings.warn(message, DegenerateProjectionWarning, stacklevel=3)
        else:
            warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
    return q_mat


def msp_run(y_mat, iterations, a0, d_o=None, keep_iterates=False):
    """
    Run MSP for a fixed number of iterations.

    Parameters
    ----------
    y_mat : numpy.ndarray
        Observations, n x p.
    iterations : int
        Number of outer iterations T.
    a0 : numpy.ndarray
        Orthogonal initial dictionary.
    d_o : numpy.ndarray, optional
        Ground truth; when given every record carries the recovery error.
    keep_iterates : bool
        Keep A^(0), ..., A^(T) on ``trace.iterates`` (needed for coupled DMSP runs).

    Returns
    -------
    (numpy.ndarray, MetricsTrace)
        A^(T) and one record per iteration with the objective ||A^(t) Y||_4^4.
    """
    y_mat = np.asarray(y_mat, dtype=float)
    a_mat = np.array(a0, dtype=float)
    trace = MetricsTrace()
    trace.initial_objective = objective(a_mat, y_mat)
    if keep_iterates:
        trace.iterates.append(a_mat)

    for t in range(iterations):
        start = time.perf_counter()
        a_mat = _project(local_gradient(a_mat, y_mat), trace)
        wall_ms = (time.perf_counter() - start) * 1000.0
        if keep_iterates:
            trace.iterates.append(a_mat)
        err = recovery_error(a_mat, d_o) if d_o is not None else None
        trace.append(TraceRecord(t + 1, MSP_NODE, recovery_error=err, objective=objective(a_mat, y_mat),
                                 wall_ms=wall_ms))
        logger.debug("MSP iteration %d: objective %.6e", t + 1, trace.records[-1].objective)

    return a_mat, trace


def dmsp_run(inst, net, iterations, rounds, a0, reference=None, track_objective=True):
    """
    Run DMSP on a partitioned instance over a time-varying network.

    :param inst: ProblemInstance partitioned into net.n_nodes blocks
    :param net: TimeVaryingNetwork
    :param iterations: outer iterations T
    :param rounds: consensus rounds T_c per outer iteration
    :param a0: common orthogonal initialization
    :param reference: MSP iterates A^(0..T) from a coupled run; enables delta and delta_a
    :param track_objective: record ||A_i Y||_4^4 per node
    :return: (DmspState, MetricsTrace)
    """
    if inst.n_nodes != net.n_nodes:
        raise ValueError("instance has {} blocks but the network has {} nodes".format(inst.n_nodes, net.n_nodes))
    if reference is not None and len(reference) < iterations + 1:
        raise ValueError("reference run has {} iterates, {} needed".format(len(reference), iterations + 1))

    blocks = inst.local_blocks()
    a0 = np.asarray(a0, dtype=float)
    state = DmspState([a0.copy() for _ in range(inst.n_nodes)], 0)
    trace = MetricsTrace()

    for t in range(iterations):
        start = time.perf_counter()
        grads = [local_gradient(a_i, y_i) for a_i, y_i in zip(state.A_list, blocks)]
        mixed = consensus_average(grads, net, t, rounds)
        state.A_list = [_project(g, trace, node=i) for i, g in enumerate(mixed)]
        state.t = t + 1
        wall_ms = (time.perf_counter() - start) * 1000.0

        # perfect-consensus iterate, the polar factor of the exact gradient sum
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DegenerateProjectionWarning)
            a_bar = polar_project(np.sum(np.stack(grads), axis=0))
        delta_c = consensus_deviation(state.A_list, a_bar)
        delta = delta_a = None
        if reference is not None:
            delta = deviation_delta(reference[t + 1], state)
            delta_a = float(np.linalg.norm(a_bar - reference[t + 1]))

        for i, a_i in enumerate(state.A_list):
            err = recovery_error(a_i, inst.D_o) if inst.D_o is not None else None
            obj = objective(a_i, inst.Y) if track_objective else None
            trace.append(TraceRecord(t + 1, i, err, delta, delta_c, obj, wall_ms, delta_a))
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug("DMSP iteration %d: delta_c %.3e, max recovery error %s",
                         t + 1, delta_c, trace.max_recovery_error(t + 1))

    return state, trace
