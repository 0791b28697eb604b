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
Patch-based denoising with a dictionary learned by DMSP.

Patches are mean-removed, so every patch gradient annihilates the all-ones direction and the
polar projections are rank deficient by one. Those degenerate projections are expected here and
are counted instead of reported one by one.
"""
import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np

from dmsp.data_model import ProblemInstance
from dmsp.harness.synth import initial_dictionary
from dmsp.learner import dmsp_run
from dmsp.matrix_core import DegenerateProjectionWarning
from dmsp.metrics.metrics_store import MetricsStore, emit_metrics
from dmsp.metrics.system_metrics import collect_all
from dmsp.network import TimeVaryingNetwork
from dmsp.utils.image import (GrayImage, add_gaussian_noise, extract_patches, psnr, read_pgm,
                              reconstruct_patches, synthetic_test_image, write_pgm)
from dmsp.utils.timeit_decorator import timeit

logger = logging.getLogger(__name__)

FAST_STRIDE = 4


@dataclass
class DenoiseReport(object):
    sigma: float
    noisy_psnr: float
    denoised_psnr: float
    patches: int
    training_patches: int
    degenerate_projections: int


@timeit
def learn_dictionary(columns, config):
    """
    Learn an orthogonal patch dictionary with DMSP; node 0's estimate is returned.

    :return: (A, MetricsTrace)
    """
    inst = ProblemInstance.from_observations(columns, config.nodes)
    net = TimeVaryingNetwork(config.nodes, config.edge_prob, directed=config.directed, seed=config.seed,
                             static=config.static_graph)
    a0 = initial_dictionary(config.init, columns.shape[0], np.random.default_rng(config.seed))
    with warnings.catch_warnings():
        if config.remove_mean:
            warnings.simplefilter("ignore", DegenerateProjectionWarning)
        state, trace = dmsp_run(inst, net, config.iters, config.tc, a0, track_objective=False)
    if trace.degenerate_projections:
        logger.info("%d rank-deficient projections while learning on mean-removed patches",
                    trace.degenerate_projections)
    return state.A_list[0], trace


def hard_threshold(coeffs, level):
    """
    Zero every coefficient with |c| <= level.
    """
    out = np.array(coeffs, dtype=float)
    out[np.abs(out) <= level] = 0.0
    return out


@timeit
def denoise(noisy, sigma, config, clean=None):
    """
    Denoise ``noisy`` (a GrayImage) corrupted by white noise of standard deviation ``sigma``.

    :param clean: optional reference image; when given the report carries both PSNR values
    :return: (GrayImage clipped to [0, 1], DenoiseReport)
    """
    if not sigma > 0:
        raise ValueError("noise level must be positive, got {}".format(sigma))
    k = config.patch_size
    columns, means = extract_patches(noisy, k, remove_mean=config.remove_mean)
    training = columns[:, ::FAST_STRIDE] if config.fast else columns
    if training.shape[1] < config.nodes:
        raise ValueError("{} training patches cannot be shared by {} nodes".format(training.shape[1], config.nodes))
    logger.info("Learning a %dx%d dictionary on %d of %d patches", k * k, k * k, training.shape[1], columns.shape[1])

    a_mat, trace = learn_dictionary(training, config)
    coeffs = hard_threshold(a_mat @ columns, config.threshold * sigma)
    patches = a_mat.T @ coeffs
    restored = GrayImage(reconstruct_patches(patches, means, noisy.shape, k)).clipped()

    noisy_psnr = denoised_psnr = None
    if clean is not None:
        noisy_psnr = psnr(clean, noisy)
        denoised_psnr = psnr(clean, restored)
        logger.info("PSNR %.2f dB -> %.2f dB", noisy_psnr, denoised_psnr)
    report = DenoiseReport(sigma, noisy_psnr, denoised_psnr, columns.shape[1], training.shape[1],
                           trace.degenerate_projections)
    return restored, report


def load_image(source):
    if source == 'builtin':
        return synthetic_test_image()
    return read_pgm(source)


def run_denoise(config):
    """
    Load the clean image, corrupt it with seeded noise of ``config.variance``, denoise it and
    write the result to ``config.out``.
    """
    store = MetricsStore(str(config.seed), 'denoise')
    clean = load_image(config.image)
    sigma = math.sqrt(config.variance)
    noisy = add_gaussian_noise(clean, config.variance, np.random.default_rng(config.seed))
    restored, report = denoise(noisy, sigma, config, clean=clean)
    write_pgm(config.out, restored)
    logger.info("Wrote denoised image to %s", config.out)

    store.add_metric('NoisyPSNR', report.noisy_psnr, 'dB')
    store.add_metric('DenoisedPSNR', report.denoised_psnr, 'dB')
    store.add_counter('DegenerateProjections', report.degenerate_projections)
    collect_all(store)
    emit_metrics(store.store)
    return report
