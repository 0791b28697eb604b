# Copyright 2026 The DMSP Authors. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License").
# You may not use this file except in compliance with the License.
# A copy of the License is located at
#     http://www.apache.org/licenses/LICENSE-2.0
# or in the "license" file accompanying this file. This file is distributed
# on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either
# express or implied. See the License for the specific language governing
# permissions and limitations under the License.

import pytest

from dmsp.arg_parser import ArgParser
from dmsp.dmsp_error import InvalidConfigError
from dmsp.harness.config import (ExperimentConfig, config_from_args, config_from_properties, load_properties,
                                 table2_configs)


def parse(*argv):
    return ArgParser.dmsp_parser().parse_args(list(argv))


def test_defaults_are_valid():
    config = ExperimentConfig().validate()
    assert config.tc_grid == [2]
    assert config.window_length(3) == 3
    assert config.window_length(0) == 1
    assert config.init == 'identity'


@pytest.mark.parametrize('field,value', [
    ('mode', 'train'),
    ('n', 0),
    ('p', -1),
    ('nodes', 0),
    ('iters', 0),
    ('trials', 0),
    ('workers', 0),
    ('theta', 0.0),
    ('theta', 1.0),
    ('edge_prob', 1.5),
    ('tc', -1),
    ('tc_values', [1, -2]),
    ('init', 'zeros'),
    ('window', 0),
    ('preset', 'table9'),
    ('variance', 0.0),
    ('threshold', -1.0),
    ('grid', 'huge'),
    ('alpha', 1.0),
    ('log_level', 'LOUD'),
])
def test_invalid_field_is_named(field, value):
    config = ExperimentConfig().with_overrides(**{field: value})
    with pytest.raises(InvalidConfigError, match="Invalid config field '{}'".format(field)) as err:
        config.validate()
    assert err.value.field == field


def test_more_nodes_than_samples():
    with pytest.raises(InvalidConfigError, match="'nodes'"):
        ExperimentConfig(p=10, nodes=20).validate()


def test_load_properties(tmp_path):
    path = tmp_path / 'run.properties'
    path.write_text("# comment\nn = 10\n\ntheta=0.3\nout=a=b.csv\n")
    assert load_properties(str(path)) == {'n': '10', 'theta': '0.3', 'out': 'a=b.csv'}


# noinspection PyClassHasNoInit
class TestProperties:

    def test_typed_values(self):
        config = config_from_properties({'n': '10', 'theta': '0.3', 'directed': 'true', 'tc-values': '0, 1,2',
                                         'window': '4', 'dump_graphs': '', 'dump-instance': 'fixtures',
                                         'init': 'random'})
        assert (config.n, config.theta, config.directed, config.tc_values) == (10, 0.3, True, [0, 1, 2])
        assert config.window == 4 and config.dump_graphs is None and config.init == 'random'
        assert config.dump_instance == 'fixtures'

    def test_unknown_key(self):
        with pytest.raises(InvalidConfigError, match="'colour': unknown configuration key"):
            config_from_properties({'colour': 'red'})

    def test_mode_key_rejected(self):
        with pytest.raises(InvalidConfigError, match="subcommand"):
            config_from_properties({'mode': 'denoise'})

    @pytest.mark.parametrize('key,text', [('n', 'ten'), ('directed', 'maybe'), ('theta', '')])
    def test_unparseable(self, key, text):
        with pytest.raises(InvalidConfigError, match="'{}'".format(key)):
            config_from_properties({key: text})


# noinspection PyClassHasNoInit
class TestLayering:

    def test_flags_override_file(self, tmp_path):
        path = tmp_path / 'run.properties'
        path.write_text("n=10\np=500\ntc=4\n")
        config = config_from_args(parse('synth', '--config', str(path), '--n', '12'))
        assert (config.mode, config.n, config.p, config.tc) == ('synth', 12, 500, 4)

    def test_tc_grid_flag(self):
        config = config_from_args(parse('synth', '--tc', '0', '1', '2'))
        assert config.tc_grid == [0, 1, 2]
        config = config_from_args(parse('synth', '--tc', '3'))
        assert config.tc_grid == [3] and config.tc_values is None

    def test_boolean_flags(self):
        config = config_from_args(parse('denoise', '--no-mean-removal', '--fast', '--directed'))
        assert not config.remove_mean and config.fast and config.directed
        assert config_from_args(parse('denoise')).remove_mean

    def test_invalid_flag_value(self):
        with pytest.raises(InvalidConfigError, match="'theta'"):
            config_from_args(parse('synth', '--theta', '1.5'))

    def test_theory_trials(self):
        config = config_from_args(parse('theory-check', '--trials', '40', '--grid', 'quick'))
        assert (config.mode, config.theory_trials, config.grid) == ('theory-check', 40, 'quick')


def test_table2_configs():
    configs = table2_configs(ExperimentConfig(directed=True, tc_values=[0, 5]))
    assert [(c.n, c.theta) for c in configs] == [(25, 0.1), (25, 0.3), (50, 0.1), (50, 0.3), (100, 0.1), (100, 0.3)]
    assert all(c.static_graph and not c.directed and c.tc_grid == [2] for c in configs)
