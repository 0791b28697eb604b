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
Synthetic recovery experiments: coupled MSP and DMSP runs on Bernoulli-Gaussian data.
"""
import csv
import logging
import os
import time
from dataclasses import dataclass, replace

import numpy as np
from joblib import Parallel, delayed

from dmsp.data_model import make_instance
from dmsp.dmsp_error import InvariantViolationError
from dmsp.harness.config import table2_configs
from dmsp.learner import MetricsTrace, dmsp_run, msp_run
from dmsp.matrix_core import is_orthogonal, random_orthogonal
from dmsp.metrics.dimension import Dimension
from dmsp.metrics.metrics_store import MetricsStore, emit_metrics
from dmsp.metrics.system_metrics import collect_all
from dmsp.network import TimeVaryingNetwork, is_strongly_connected

logger = logging.getLogger(__name__)

ORTHOGONALITY_TOL = 1e-8
SUMMARY_COLUMNS = ['n', 'p', 'theta', 'nodes', 'edge_prob', 'directed', 'iters', 'tc', 'trials',
                   'msp_mean_error', 'dmsp_mean_error', 'dmsp_stderr', 'disconnected_windows',
                   'degenerate_projections']


@dataclass
class TrialResult(object):
    trial: int
    tc: int
    msp_final_error: float
    dmsp_final_error: float
    disconnected_windows: int
    degenerate_projections: int
    msp_trace: MetricsTrace
    dmsp_trace: MetricsTrace
    wall_ms: float


def initial_dictionary(policy, n, rng):
    if policy == 'identity':
        return np.eye(n)
    return random_orthogonal(n, rng)


def consensus_snapshots(net, iterations, rounds):
    """
    The consensus snapshots of a run in the order they are used: (t, 1..rounds) for every t.
    """
    return [net.snapshot(t, s) for t in range(iterations) for s in range(1, rounds + 1)]


def count_disconnected_windows(snapshots, window):
    """
    Split the snapshot sequence into consecutive windows of ``window`` graphs and count those
    whose union is not strongly connected. Failing windows are logged, never resampled.
    """
    failures = 0
    for start in range(0, len(snapshots), window):
        if not is_strongly_connected(snapshots[start:start + window]):
            failures += 1
            logger.warning("Snapshots %d..%d do not form a strongly connected union", start,
                           min(start + window, len(snapshots)) - 1)
    return failures


def _check_orthogonal(label, mats):
    for i, mat in enumerate(mats):
        if not is_orthogonal(mat, ORTHOGONALITY_TOL):
            raise InvariantViolationError("{} iterate {} lost orthogonality".format(label, i))


def run_trial(config, tc, trial):
    """
    One coupled experiment: MSP on the full data and DMSP on the partitioned data, from the same
    initial dictionary. Seeded by config.seed + trial.
    """
    seed = config.seed + trial
    rng = np.random.default_rng(seed)
    start = time.perf_counter()

    inst = make_instance(config.n, config.p, config.theta, config.nodes, rng)
    if config.dump_instance:
        inst.dump(os.path.join(config.dump_instance, "trial{}".format(trial)))
    a0 = initial_dictionary(config.init, config.n, rng)
    dump_dir = None
    if config.dump_graphs:
        dump_dir = os.path.join(config.dump_graphs, "tc{}_trial{}".format(tc, trial))
    net = TimeVaryingNetwork(config.nodes, config.edge_prob, directed=config.directed, seed=seed,
                             static=config.static_graph, dump_dir=dump_dir)

    a_msp, msp_trace = msp_run(inst.Y, config.iters, a0, d_o=inst.D_o, keep_iterates=True)
    state, dmsp_trace = dmsp_run(inst, net, config.iters, tc, a0, reference=msp_trace.iterates)
    _check_orthogonal('MSP', [a_msp])
    _check_orthogonal('DMSP node', state.A_list)

    windows = count_disconnected_windows(consensus_snapshots(net, config.iters, tc), config.window_length(tc))
    wall_ms = (time.perf_counter() - start) * 1000.0
    return TrialResult(trial, tc, msp_trace.final_max_recovery_error(), dmsp_trace.final_max_recovery_error(),
                       windows, dmsp_trace.degenerate_projections, msp_trace, dmsp_trace, wall_ms)


def run_trials(config, tc):
    """
    All trials of one T_c value, in trial order, on ``config.workers`` processes.
    """
    return Parallel(n_jobs=config.workers)(delayed(run_trial)(config, tc, trial) for trial in range(config.trials))


def write_trace(path, results, record_timing=False):
    """
    Trace CSV: the MetricsTrace columns prefixed with the trial index; MSP rows precede the DMSP
    rows of each trial.
    """
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['trial'] + MetricsTrace.CSV_COLUMNS)
        for result in results:
            for trace in (result.msp_trace, result.dmsp_trace):
                for row in trace.rows(record_timing):
                    writer.writerow([result.trial] + row)


def summarize(config, tc, results):
    dmsp_errors = np.array([r.dmsp_final_error for r in results])
    stderr = float(np.std(dmsp_errors, ddof=1) / np.sqrt(len(results))) if len(results) > 1 else 0.0
    return [config.n, config.p, config.theta, config.nodes, config.edge_prob, config.directed, config.iters, tc,
            len(results), float(np.mean([r.msp_final_error for r in results])), float(np.mean(dmsp_errors)),
            stderr, sum(r.disconnected_windows for r in results), sum(r.degenerate_projections for r in results)]


def summary_path(out):
    stem, _ = os.path.splitext(out)
    return "{}_summary.csv".format(stem)


def trace_path(out, label=None):
    if label is None:
        return out
    stem, ext = os.path.splitext(out)
    return "{}_{}{}".format(stem, label, ext or '.csv')


def _runs(config):
    """
    (config, tc, label) for every experiment a synth invocation performs.
    """
    if config.preset == 'table2':
        return [(c, c.tc, "n{}_theta{}".format(c.n, c.theta)) for c in table2_configs(config)]
    grid = config.tc_grid
    if len(grid) == 1:
        return [(config, grid[0], None)]
    return [(replace(config, tc_values=None), tc, "tc{}".format(tc)) for tc in grid]


def _record_metrics(store, tc, results):
    dims = [Dimension('Tc', tc)]
    for result in results:
        store.add_time('TrialTime', result.wall_ms, dimensions=dims + [Dimension('Trial', result.trial)])
    store.add_metric('FinalMaxRecoveryError', float(np.mean([r.dmsp_final_error for r in results])),
                     dimensions=list(dims))
    store.add_counter('DegenerateProjections', sum(r.degenerate_projections for r in results), list(dims))
    store.add_counter('DisconnectedWindows', sum(r.disconnected_windows for r in results), list(dims))


def run_synth(config):
    """
    Run every configured synthetic experiment, write the trace CSV(s) and the summary CSV.

    :return: list of summary rows, one per (configuration, T_c)
    """
    store = MetricsStore(str(config.seed), 'synth')
    rows = []
    for run_config, tc, label in _runs(config):
        logger.info("Running %d trials: n=%d p=%d theta=%s N=%d P=%s T=%d T_c=%d%s", run_config.trials,
                    run_config.n, run_config.p, run_config.theta, run_config.nodes, run_config.edge_prob,
                    run_config.iters, tc, " (directed)" if run_config.directed else "")
        results = run_trials(run_config, tc)
        for result in results:
            logger.info("Trial %d (T_c=%d): MSP %.4f%%, DMSP max %.4f%%, %d disconnected windows", result.trial, tc,
                        100 * result.msp_final_error, 100 * result.dmsp_final_error, result.disconnected_windows)
        write_trace(trace_path(config.out, label), results, config.record_timing)
        rows.append(summarize(run_config, tc, results))
        _record_metrics(store, tc, results)

    with open(summary_path(config.out), 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(SUMMARY_COLUMNS)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    logger.info("Wrote summary of %d runs to %s", len(rows), summary_path(config.out))

    collect_all(store)
    emit_metrics(store.store)
    return rows
