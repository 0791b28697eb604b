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
Grayscale image I/O and the overlapping-patch pipeline used for denoising.

Images are float arrays scaled to [0, 1]; PGM files are 8-bit.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from PIL import Image

logger = logging.getLogger(__name__)

PIXEL_MAX = 255.0
BUILTIN_SIZE = 512


@dataclass
class GrayImage(object):
    """
    values[row, col]; may leave [0, 1] after noise is added and is clipped on output.
    """
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2:
            raise ValueError("a grayscale image needs a 2-d array, got shape {}".format(self.values.shape))

    @property
    def height(self):
        return self.values.shape[0]

    @property
    def width(self):
        return self.values.shape[1]

    @property
    def shape(self):
        return self.values.shape

    def clipped(self):
        return GrayImage(np.clip(self.values, 0.0, 1.0))


def read_pgm(path):
    """
    Load an image file (8-bit PGM or anything Pillow reads) as a GrayImage.
    """
    with Image.open(path) as img:
        values = np.asarray(img.convert('L'), dtype=float) / PIXEL_MAX
    logger.debug("Read %dx%d image from %s", values.shape[1], values.shape[0], path)
    return GrayImage(values)


def write_pgm(path, image):
    """
    Clip to [0, 1] and write a binary 8-bit PGM.
    """
    pixels = np.round(np.clip(image.values, 0.0, 1.0) * PIXEL_MAX).astype(np.uint8)
    Image.fromarray(pixels).save(path, format='PPM')


def synthetic_test_image(size=BUILTIN_SIZE):
    """
    Deterministic piecewise-smooth test scene: a shaded background with flat, textured and
    striped regions separated by sharp edges. Quantized to 8 bits like a loaded PGM.
    """
    y, x = np.mgrid[0:size, 0:size] / float(size)
    img = 0.35 + 0.25 * x + 0.1 * y

    disc = (x - 0.3) ** 2 + (y - 0.35) ** 2 < 0.18 ** 2
    img[disc] = 0.85

    block = (y > 0.55) & (y < 0.9) & (x > 0.1) & (x < 0.45)
    img[block] = 0.15 + 0.1 * np.sin(2 * np.pi * 6 * x[block])

    img[x + y > 1.45] = 0.25

    stripes = (x - 0.72) ** 2 + (y - 0.3) ** 2 < 0.15 ** 2
    img[stripes] = 0.5 + 0.2 * np.sin(2 * np.pi * 8 * (x[stripes] + y[stripes]))

    img = np.round(np.clip(img, 0.0, 1.0) * PIXEL_MAX) / PIXEL_MAX
    return GrayImage(img)


def add_gaussian_noise(image, variance, rng):
    """
    Additive white Gaussian noise of the given variance, without clipping.
    """
    if variance < 0:
        raise ValueError("noise variance must be non-negative, got {}".format(variance))
    return GrayImage(image.values + math.sqrt(variance) * rng.standard_normal(image.shape))


def extract_patches(image, k, remove_mean=True):
    """
    All overlapping k x k patches (stride 1) as columns, each vectorized column-major.

    :param image: GrayImage
    :param k: patch side
    :param remove_mean: subtract each patch's mean from its column
    :return: (columns, means), columns of shape (k*k, (H-k+1)*(W-k+1)); means is zero when
        remove_mean is False
    """
    if not 1 <= k <= min(image.shape):
        raise ValueError("patch side {} does not fit a {}x{} image".format(k, image.width, image.height))
    windows = sliding_window_view(image.values, (k, k))
    columns = windows.transpose(0, 1, 3, 2).reshape(-1, k * k).T.copy()
    if remove_mean:
        means = columns.mean(axis=0)
        columns -= means
    else:
        means = np.zeros(columns.shape[1])
    return columns, means


def reconstruct_patches(columns, means, shape, k):
    """
    Re-add the patch means and average every overlapping patch estimate per pixel.

    :return: numpy array of ``shape``, not clipped
    """
    height, width = shape
    rows, cols = height - k + 1, width - k + 1
    if columns.shape != (k * k, rows * cols):
        raise ValueError("{} patch columns do not tile a {}x{} image".format(columns.shape, width, height))
    blocks = (columns + means).T.reshape(rows, cols, k, k).transpose(0, 1, 3, 2)

    total = np.zeros(shape)
    counts = np.zeros(shape)
    for i in range(k):
        for j in range(k):
            total[i:i + rows, j:j + cols] += blocks[:, :, i, j]
            counts[i:i + rows, j:j + cols] += 1.0
    return total / counts


def psnr(reference, estimate):
    """
    10 log10(1 / MSE) for images on [0, 1]; math.inf when they are identical.
    """
    ref = reference.values if isinstance(reference, GrayImage) else np.asarray(reference, dtype=float)
    est = estimate.values if isinstance(estimate, GrayImage) else np.asarray(estimate, dtype=float)
    if ref.shape != est.shape:
        raise ValueError("image shapes {} and {} differ".format(ref.shape, est.shape))
    mse = float(np.mean((ref - est) ** 2))
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(1.0 / mse)
