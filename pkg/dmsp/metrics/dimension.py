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
Dimension class for experiment metrics
"""


class Dimension(object):
    """
    Dimension class defining key value pair
    """
    def __init__(self, name, value):
        """
        Parameters
        ----------
        name: str
            Name of dimension, e.g. Mode, Trial, Tc
        value : str, int, float
           Value of dimension
        """
        self.name = name
        self.value = value

    def __str__(self):
        return "{}:{}".format(self.name, self.value)

    def __eq__(self, other):
        return isinstance(other, Dimension) and (self.name, self.value) == (other.name, other.value)

    def __hash__(self):
        return hash((self.name, str(self.value)))
