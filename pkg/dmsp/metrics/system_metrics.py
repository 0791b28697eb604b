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
Host and process resource metrics of an experiment run
"""
import os

import psutil

from dmsp.metrics.dimension import Dimension

dimension = [Dimension('Level', 'Host')]


def cpu_utilization(store):
    store.add_percent('CPUUtilization', psutil.cpu_percent(), list(dimension))


def memory_used(store):
    data = psutil.virtual_memory().used / (1024 * 1024)  # in MB
    store.add_size('MemoryUsed', data, list(dimension))


def process_memory(store):
    data = psutil.Process(os.getpid()).memory_info().rss / (1024 * 1024)  # in MB
    store.add_size('ProcessMemory', data, [Dimension('Level', 'Process')])


def collect_all(store):
    """
    Record every resource metric into ``store`` (a MetricsStore).
    """
    for collector in (cpu_utilization, memory_used, process_memory):
        collector(store)
