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


# noinspection PyClassHasNoInit
class TestDmspParser:
    parser = ArgParser.dmsp_parser()

    def test_synth_flags(self):
        args = self.parser.parse_args(['synth', '--n', '25', '--p', '10000', '--theta', '0.1', '--nodes', '36',
                                       '--edge-prob', '0.2', '--iters', '15', '--tc', '3', '--trials', '5',
                                       '--seed', '42', '--out', 'trace.csv', '--directed', '--init', 'identity'])
        assert args.mode == 'synth'
        assert (args.n, args.p, args.theta, args.nodes, args.edge_prob) == (25, 10000, 0.1, 36, 0.2)
        assert (args.iters, args.tc, args.trials, args.seed) == (15, [3], 5, 42)
        assert args.directed and args.init == 'identity' and args.out == 'trace.csv'

    def test_dump_flags(self):
        args = self.parser.parse_args(['synth', '--dump-instance', 'fixtures', '--dump-graphs', 'graphs'])
        assert (args.dump_instance, args.dump_graphs) == ('fixtures', 'graphs')

    def test_unset_flags_are_none(self):
        args = self.parser.parse_args(['synth'])
        assert args.n is None and args.directed is None and args.record_timing is None and args.config is None

    def test_denoise_flags(self):
        args = self.parser.parse_args(['denoise', '--image', 'in.pgm', '--variance', '0.0025', '--fast',
                                       '--no-mean-removal', '--patch-size', '6', '--threshold', '2.5'])
        assert (args.image, args.variance, args.patch_size, args.threshold) == ('in.pgm', 0.0025, 6, 2.5)
        assert args.fast and args.remove_mean is False

    def test_theory_check_flags(self):
        args = self.parser.parse_args(['theory-check', '--grid', 'default', '--out', 'checks.csv'])
        assert (args.mode, args.grid, args.out) == ('theory-check', 'default', 'checks.csv')

    def test_mode_required(self):
        with pytest.raises(SystemExit):
            self.parser.parse_args([])

    def test_bad_choice(self):
        with pytest.raises(SystemExit):
            self.parser.parse_args(['synth', '--init', 'zeros'])
