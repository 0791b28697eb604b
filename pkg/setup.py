# Copyright 2026 The DMSP Authors. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License").
# You may not use this file except in compliance with the License.
# A copy of the License is located at
#     http://www.apache.org/licenses/LICENSE-2.0
# or in the "license" file accompanying this file. This file is distributed
# on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either
# express or implied. See the License for the specific language governing
# permissions and limitations under the License.

# To build and upload a new version, follow the steps below.
# Notes:
# - this is a pure Python package for Python 3
# - Make sure you have bumped the version! at dmsp/version.py
# $ pip install wheel
# $ python setup.py bdist_wheel

"""
Setup.py for the dmsp package
"""

import os
import sys
from datetime import date

from setuptools import setup, find_packages

import dmsp

pkgs = find_packages(exclude=['*.tests', '*.tests.*'])


def pypi_description():
    """
    Imports the long description for the project page
    """
    with open('PyPiDescription.rst') as df:
        return df.read()


def detect_dmsp_version():
    sys.path.append(os.path.abspath("dmsp"))
    if "--release" in sys.argv:
        sys.argv.remove("--release")
        return dmsp.__version__.strip()

    return dmsp.__version__.strip() + 'b' + str(date.today()).replace('-', '')


if __name__ == '__main__':
    version = detect_dmsp_version()

    requirements = ['numpy>=1.20', 'scipy', 'networkx', 'joblib', 'Pillow', 'psutil']

    setup(
        name='dmsp',
        version=version,
        description='Decentralized orthogonal dictionary learning by l4-norm maximization over time-varying networks',
        long_description=pypi_description(),
        keywords='Dictionary Learning Decentralized Optimization Consensus Sparse Coding Denoising',
        packages=pkgs,
        python_requires='>=3.7',
        install_requires=requirements,
        extras_require={
            'test': ['pytest', 'pytest-mock', 'mock', 'hypothesis', 'pylint'],
        },
        entry_points={
            'console_scripts': [
                'dmsp=dmsp.experiment_runner:start',
            ]
        },
        include_package_data=True,
        license='Apache License Version 2.0'
    )
