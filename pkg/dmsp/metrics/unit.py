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
Module to define Unit mappings
"""


class Units(object):
    """
    Define a unit of elements
    """

    def __init__(self):
        self.units = {
            'ms': 'Milliseconds',
            's': 'Seconds',
            'percent': 'Percent',
            'count': 'Count',
            'dB': 'Decibels',
            'MB': 'Megabytes',
            None: 'unit',
        }
