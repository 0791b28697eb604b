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
DMSP Error
"""


class DmspError(Exception):
    """
    Error for the DMSP package
    """
    def __init__(self, message):
        super(DmspError, self).__init__(message)


class InvalidConfigError(DmspError):
    """
    Raised when an experiment configuration field is out of range or unknown
    """
    def __init__(self, field, message):
        super(InvalidConfigError, self).__init__("Invalid config field '{}': {}".format(field, message))
        self.field = field


class InvariantViolationError(DmspError):
    """
    Raised when a run produces a result that breaks a documented invariant
    """
