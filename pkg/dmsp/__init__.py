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
Decentralized orthogonal dictionary learning by l4-norm maximization.

a. MSP: the centralized matching, stretching and projection iteration.
b. DMSP: nodes mix local gradients by consensus averaging before projecting.
c. Simulated time-varying networks, synthetic problems and image denoising.
d. Numeric checks of the deterministic inequalities behind the convergence analysis.
"""
from . import version

__version__ = version.__version__
