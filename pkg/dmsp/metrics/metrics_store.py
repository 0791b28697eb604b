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
Metrics collection module
"""
import logging

from dmsp.metrics.dimension import Dimension
from dmsp.metrics.metric import Metric

logger = logging.getLogger(__name__)


class MetricsStore(object):
    """
    Creates and updates the metrics of one run and keeps them in insertion order
    """

    def __init__(self, run_id, mode):
        self.store = list()
        self.run_id = run_id
        self.mode = mode
        self.cache = {}

    def _add_or_update(self, name, value, unit, metrics_method=None, dimensions=None):
        if dimensions is None:
            dimensions = list()
        elif not isinstance(dimensions, list):
            raise ValueError("Please provide a list of dimensions")
        dimensions = [Dimension("Mode", self.mode)] + dimensions

        # Cache the metric with an unique key for update
        dim_str = '-'.join([name, str(unit)] + [str(d) for d in dimensions])
        if dim_str not in self.cache:
            metric = Metric(name, value, unit, dimensions, self.run_id, metrics_method)
            self.store.append(metric)
            self.cache[dim_str] = metric
        else:
            self.cache[dim_str].update(value)

    def add_counter(self, name, value, dimensions=None):
        """
        Add a counter metric or increment an existing counter metric
        """
        self._add_or_update(name, value, 'count', 'counter', dimensions)

    def add_time(self, name, value, unit='ms', dimensions=None):
        """
        Add a time based metric like trial duration, default unit is 'ms'
        """
        if unit not in ['ms', 's']:
            raise ValueError("the unit for a timed metric should be one of ['ms', 's']")
        self._add_or_update(name, value, unit, dimensions=dimensions)

    def add_percent(self, name, value, dimensions=None):
        self._add_or_update(name, value, 'percent', dimensions=dimensions)

    def add_size(self, name, value, dimensions=None):
        self._add_or_update(name, value, 'MB', dimensions=dimensions)

    def add_metric(self, name, value, unit=None, dimensions=None):
        """
        Add a generic metric, e.g. a PSNR in 'dB'
        """
        self._add_or_update(name, value, unit, dimensions=dimensions)


def emit_metrics(metrics):
    """
    Log every metric of ``metrics`` (a list of Metric objects) as a [METRICS] line
    """
    if metrics:
        for met in metrics:
            logger.info("[METRICS]%s", str(met))
