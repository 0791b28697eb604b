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
Experiment configuration: defaults, an optional key=value properties file, then CLI flags.
"""
import logging
from dataclasses import dataclass, fields, replace
from typing import List, Optional

from dmsp.dmsp_error import InvalidConfigError

logger = logging.getLogger(__name__)

MODES = ('synth', 'denoise', 'theory-check')
INIT_POLICIES = ('identity', 'random')
GRIDS = ('default', 'quick')
PRESETS = ('table2',)
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')

# (n, p, theta, iterations) rows of the time-invariant network comparison
TABLE2_GRID = [
    (25, 10000, 0.1, 15),
    (25, 10000, 0.3, 15),
    (50, 20000, 0.1, 20),
    (50, 20000, 0.3, 20),
    (100, 40000, 0.1, 25),
    (100, 40000, 0.3, 25),
]


@dataclass
class ExperimentConfig(object):
    """
    Every knob of a dmsp run. ``tc`` is the consensus round count T_c; ``tc_values``, when set,
    runs the same trials once per value.
    """
    mode: str = 'synth'
    n: int = 25
    p: int = 10000
    theta: float = 0.1
    nodes: int = 36
    edge_prob: float = 0.5
    iters: int = 15
    tc: int = 2
    tc_values: Optional[List[int]] = None
    directed: bool = False
    trials: int = 5
    seed: int = 42
    init: str = 'identity'
    out: str = 'trace.csv'
    static_graph: bool = False
    window: Optional[int] = None
    workers: int = 1
    record_timing: bool = False
    dump_graphs: Optional[str] = None
    dump_instance: Optional[str] = None
    preset: Optional[str] = None
    image: str = 'builtin'
    variance: float = 0.0025
    threshold: float = 3.0
    patch_size: int = 8
    remove_mean: bool = True
    fast: bool = False
    grid: str = 'default'
    theory_trials: int = 500
    alpha: float = 0.5
    log_level: str = 'INFO'

    @property
    def tc_grid(self):
        return list(self.tc_values) if self.tc_values else [self.tc]

    def window_length(self, tc):
        """
        Number of consecutive consensus snapshots checked jointly for strong connectivity.
        """
        return self.window if self.window is not None else max(tc, 1)

    def validate(self):
        """
        :raises InvalidConfigError: naming the first offending field
        """
        if self.mode not in MODES:
            raise InvalidConfigError('mode', "must be one of {}, got {!r}".format(MODES, self.mode))
        for name in ('n', 'p', 'nodes', 'iters', 'trials', 'patch_size', 'workers', 'theory_trials'):
            if getattr(self, name) < 1:
                raise InvalidConfigError(name, "must be positive, got {}".format(getattr(self, name)))
        if not 0.0 < self.theta < 1.0:
            raise InvalidConfigError('theta', "must lie in (0, 1), got {}".format(self.theta))
        if not 0.0 <= self.edge_prob <= 1.0:
            raise InvalidConfigError('edge_prob', "must lie in [0, 1], got {}".format(self.edge_prob))
        if self.tc < 0:
            raise InvalidConfigError('tc', "must be non-negative, got {}".format(self.tc))
        if self.tc_values is not None and any(tc < 0 for tc in self.tc_values):
            raise InvalidConfigError('tc_values', "every value must be non-negative, got {}".format(self.tc_values))
        if self.mode == 'synth' and self.nodes > self.p:
            raise InvalidConfigError('nodes', "{} nodes cannot share {} columns".format(self.nodes, self.p))
        if self.init not in INIT_POLICIES:
            raise InvalidConfigError('init', "must be one of {}, got {!r}".format(INIT_POLICIES, self.init))
        if self.window is not None and self.window < 1:
            raise InvalidConfigError('window', "must be positive, got {}".format(self.window))
        if self.preset is not None and self.preset not in PRESETS:
            raise InvalidConfigError('preset', "must be one of {}, got {!r}".format(PRESETS, self.preset))
        if self.variance <= 0:
            raise InvalidConfigError('variance', "must be positive, got {}".format(self.variance))
        if self.threshold < 0:
            raise InvalidConfigError('threshold', "must be non-negative, got {}".format(self.threshold))
        if self.grid not in GRIDS:
            raise InvalidConfigError('grid', "must be one of {}, got {!r}".format(GRIDS, self.grid))
        if not 0.0 < self.alpha < 1.0:
            raise InvalidConfigError('alpha', "must lie in (0, 1), got {}".format(self.alpha))
        if self.log_level.upper() not in LOG_LEVELS:
            raise InvalidConfigError('log_level', "must be one of {}, got {!r}".format(LOG_LEVELS, self.log_level))
        return self

    def with_overrides(self, **overrides):
        return replace(self, **overrides)


def load_properties(file_path):
    """
    Read properties file into map.
    """
    props = {}
    with open(file_path, "rt") as f:
        for line in f:
            line = line.strip()
            if not line.startswith("#"):
                pair = line.split("=", 1)
                if len(pair) > 1:
                    key = pair[0].strip()
                    props[key] = pair[1].strip()

    return props


def _parse_bool(name, text):
    lowered = text.strip().lower()
    if lowered in ('true', 'yes', '1', 'on'):
        return True
    if lowered in ('false', 'no', '0', 'off'):
        return False
    raise InvalidConfigError(name, "expected a boolean, got {!r}".format(text))


def _parse_value(f, text):
    name = f.name
    default = getattr(ExperimentConfig, name, None)
    try:
        if name == 'tc_values':
            return [int(v) for v in text.replace(',', ' ').split()]
        if name in ('window',):
            return int(text) if text else None
        if name in ('dump_graphs', 'dump_instance', 'preset'):
            return text or None
        if isinstance(default, bool):
            return _parse_bool(name, text)
        if isinstance(default, int):
            return int(text)
        if isinstance(default, float):
            return float(text)
    except ValueError:
        raise InvalidConfigError(name, "cannot parse {!r}".format(text))
    return text


def config_from_properties(props, base=None):
    """
    Apply a map of property strings on top of ``base`` (defaults when omitted).
    Keys may use dashes or underscores; unknown keys are rejected.
    """
    known = {f.name: f for f in fields(ExperimentConfig)}
    overrides = {}
    for key, text in props.items():
        name = key.replace('-', '_')
        if name not in known:
            raise InvalidConfigError(key, "unknown configuration key")
        if name == 'mode':
            raise InvalidConfigError(key, "the mode is chosen by the subcommand")
        overrides[name] = _parse_value(known[name], text)
    return replace(base or ExperimentConfig(), **overrides)


def config_from_args(args):
    """
    Build the config of a CLI run: defaults, then ``--config`` file, then explicitly given flags.
    Flags left at None by the parser do not override.
    """
    config = ExperimentConfig(mode=args.mode)
    config_file = getattr(args, 'config', None)
    if config_file:
        config = config_from_properties(load_properties(config_file), config)
        logger.info("Loaded configuration from %s", config_file)

    overrides = {}
    for f in fields(ExperimentConfig):
        value = getattr(args, f.name, None)
        if value is not None and f.name != 'mode':
            overrides[f.name] = value
    tc_flag = overrides.pop('tc', None)
    if tc_flag is not None:
        if len(tc_flag) == 1:
            overrides['tc'] = tc_flag[0]
            overrides['tc_values'] = None
        else:
            overrides['tc'] = tc_flag[0]
            overrides['tc_values'] = list(tc_flag)
    return replace(config, **overrides).validate()


def table2_configs(base):
    """
    One config per row of the time-invariant network comparison: undirected Metropolis
    weights on a static Erdos-Renyi graph with P = 0.5 and T_c = 2.
    """
    return [replace(base, n=n, p=p, theta=theta, iters=iters, edge_prob=0.5, tc=2, tc_values=None,
                    directed=False, static_graph=True, preset=None).validate()
            for n, p, theta, iters in TABLE2_GRID]
