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
Small configurations and images shared by the harness tests.
"""
import os

from dmsp.harness.config import ExperimentConfig
from dmsp.utils.image import GrayImage, synthetic_test_image


def small_synth_config(tmp_dir, **overrides):
    values = dict(mode='synth', n=5, p=600, theta=0.3, nodes=4, edge_prob=0.5, iters=5, tc=1, trials=2,
                  seed=1, out=os.path.join(str(tmp_dir), 'trace.csv'))
    values.update(overrides)
    return ExperimentConfig(**values).validate()


def small_denoise_config(tmp_dir, **overrides):
    values = dict(mode='denoise', nodes=4, edge_prob=0.5, iters=8, tc=2, seed=3, init='identity',
                  out=os.path.join(str(tmp_dir), 'denoised.pgm'))
    values.update(overrides)
    return ExperimentConfig(**values).validate()


def crop(image, top, left, size):
    return GrayImage(image.values[top:top + size, left:left + size])


def builtin_crop(size=64):
    """
    Corner of the bundled test image holding the disc edge and the shaded background.
    """
    return crop(synthetic_test_image(), 150, 40, size)
