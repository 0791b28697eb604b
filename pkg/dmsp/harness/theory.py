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
theory-check mode: run the inequality checks and write one CSV row per check.
"""
import csv
import logging

import numpy as np

from dmsp import theory_checks
from dmsp.dmsp_error import InvariantViolationError
from dmsp.metrics.dimension import Dimension
from dmsp.metrics.metrics_store import MetricsStore, emit_metrics

logger = logging.getLogger(__name__)

QUICK_TRIALS = 50
QUICK_P = 20000


def run_checks(config):
    """
    :return: list of CheckReport for the configured grid
    """
    rng = np.random.default_rng(config.seed)
    if config.grid == 'quick':
        return theory_checks.default_grid(rng, trials=min(config.theory_trials, QUICK_TRIALS), p=QUICK_P,
                                          alpha=config.alpha)
    return theory_checks.default_grid(rng, trials=config.theory_trials, alpha=config.alpha)


def write_reports(path, reports):
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(theory_checks.CheckReport.CSV_COLUMNS)
        for report in reports:
            writer.writerow(report.to_row())


def run_theory_check(config):
    """
    Write the check reports to ``config.out``.

    :raises InvariantViolationError: when any check reports a violation
    """
    store = MetricsStore(str(config.seed), 'theory-check')
    reports = run_checks(config)
    write_reports(config.out, reports)
    logger.info("Wrote %d check reports to %s", len(reports), config.out)

    for report in reports:
        store.add_counter('CheckViolations', report.violations, [Dimension('Check', report.name)])
    emit_metrics(store.store)

    failed = [r for r in reports if not r.passed]
    if failed:
        raise InvariantViolationError("{} of {} checks reported violations: {}".format(
            len(failed), len(reports), ", ".join(sorted({r.name for r in failed}))))
    return reports
