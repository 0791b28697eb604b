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
File to define the entry point of the dmsp command
"""

import logging
import sys

from dmsp.arg_parser import ArgParser
from dmsp.dmsp_error import DmspError
from dmsp.harness.config import config_from_args
from dmsp.harness.denoise import run_denoise
from dmsp.harness.synth import run_synth
from dmsp.harness.theory import run_theory_check

logger = logging.getLogger(__name__)

RUNNERS = {
    'synth': run_synth,
    'denoise': run_denoise,
    'theory-check': run_theory_check,
}


def run(argv=None):
    """
    Parse ``argv``, run the selected mode and return the process exit code.
    """
    args = ArgParser.dmsp_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stdout, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                        level=(args.log_level or 'INFO'))
    try:
        config = config_from_args(args)
        logging.getLogger().setLevel(config.log_level.upper())
        RUNNERS[config.mode](config)
    except DmspError as e:
        logger.error("%s", e)
        return 1
    except OSError as e:
        logger.error("I/O failure: %s", e)
        return 1
    return 0


def start():
    """
    This is the entry point for dmsp
    :return:
    """
    sys.exit(run())


if __name__ == "__main__":
    start()
