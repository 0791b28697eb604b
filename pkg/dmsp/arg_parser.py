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
This module parses the arguments given through the dmsp command-line. Every experiment flag
defaults to None so that only the flags a user actually gives override the configuration file.
"""

import argparse


# noinspection PyTypeChecker
class ArgParser(object):
    """
    Argument parser for the dmsp synth, denoise and theory-check commands
    """

    @staticmethod
    def _add_common_args(parser):
        parser.add_argument('--config',
                            dest='config',
                            help='key=value properties file; explicit flags override its entries')
        parser.add_argument('--seed', type=int, help='Base random seed; trial i uses seed + i')
        parser.add_argument('--out', help='Output path')
        parser.add_argument('--log-level',
                            dest='log_level',
                            choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                            help='Logging level, INFO by default')

    @staticmethod
    def _add_learner_args(parser):
        parser.add_argument('--nodes', type=int, help='Number of network nodes N')
        parser.add_argument('--edge-prob', dest='edge_prob', type=float,
                            help='Erdos-Renyi edge probability P of each snapshot')
        parser.add_argument('--iters', type=int, help='Outer iterations T')
        parser.add_argument('--tc', type=int, nargs='+', metavar='T_C',
                            help='Consensus rounds per iteration; several values run a T_c grid')
        parser.add_argument('--directed', action='store_true', default=None,
                            help='Directed snapshots with push weights instead of undirected Metropolis weights')
        parser.add_argument('--static-graph', dest='static_graph', action='store_true', default=None,
                            help='Use one time-invariant snapshot for every consensus round')
        parser.add_argument('--init', choices=['identity', 'random'], help='Initial dictionary policy')

    @staticmethod
    def dmsp_parser():
        """
        Argument parser for the dmsp command
        """
        parser = argparse.ArgumentParser(prog='dmsp',
                                         description='Decentralized l4-norm orthogonal dictionary learning')
        subparsers = parser.add_subparsers(dest='mode', metavar='{synth,denoise,theory-check}')
        subparsers.required = True

        synth = subparsers.add_parser('synth', help='Coupled MSP/DMSP recovery experiments on synthetic data')
        ArgParser._add_common_args(synth)
        ArgParser._add_learner_args(synth)
        synth.add_argument('--n', type=int, help='Dictionary dimension n')
        synth.add_argument('--p', type=int, help='Number of samples p')
        synth.add_argument('--theta', type=float, help='Bernoulli-Gaussian sparsity level')
        synth.add_argument('--trials', type=int, help='Independent trials per T_c value')
        synth.add_argument('--window', type=int,
                           help='Snapshots per strong-connectivity window, T_c by default')
        synth.add_argument('--workers', type=int,
                           help='Trials run in parallel; worker processes keep their own log output, '
                                'per-trial results and window counts are logged by the parent')
        synth.add_argument('--timing', dest='record_timing', action='store_true', default=None,
                           help='Fill the wall_ms trace column')
        synth.add_argument('--dump-graphs', dest='dump_graphs', metavar='DIR',
                           help='Write every snapshot adjacency and weight matrix as CSV into DIR')
        synth.add_argument('--dump-instance', dest='dump_instance', metavar='DIR',
                           help='Write every trial instance as binary matrix dumps into DIR')
        synth.add_argument('--preset', choices=['table2'],
                           help='Run the time-invariant network grid over n, p and theta')

        denoise = subparsers.add_parser('denoise', help='Denoise a grayscale image with a DMSP dictionary')
        ArgParser._add_common_args(denoise)
        ArgParser._add_learner_args(denoise)
        denoise.add_argument('--image', help="Clean PGM image, or 'builtin' for the bundled test image")
        denoise.add_argument('--variance', type=float, help='Variance of the added Gaussian noise')
        denoise.add_argument('--threshold', type=float, help='Hard threshold as a multiple of sigma')
        denoise.add_argument('--patch-size', dest='patch_size', type=int, help='Patch side k')
        denoise.add_argument('--no-mean-removal', dest='remove_mean', action='store_false', default=None,
                             help='Keep the patch means in the learning data')
        denoise.add_argument('--fast', action='store_true', default=None,
                             help='Learn on every 4th patch, reconstruct all of them')

        theory = subparsers.add_parser('theory-check', help='Numerically validate the convergence inequalities')
        ArgParser._add_common_args(theory)
        theory.add_argument('--grid', choices=['default', 'quick'], help='Parameter grid to check')
        theory.add_argument('--trials', dest='theory_trials', type=int, help='Trials per check')
        theory.add_argument('--alpha', type=float, help='Contraction constant of the network bound')

        return parser
