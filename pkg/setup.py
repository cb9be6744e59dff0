#!/usr/bin/env python

"""
Ref: https://github.com/argoai/argoverse-api/blob/master/setup.py
A setuptools based setup module.
See:
https://packaging.python.org/en/latest/distributing.html
https://github.com/pypa/sampleproject
"""

from codecs import open  # To use a consistent encoding
from os import path

# Always prefer setuptools over distutils
from setuptools import find_packages, setup

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="reebsweep",
    version="0.1.0",
    description="Reeb graphs of unions of balls around point clouds, computed by a sweep over interval events.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="",
    author="",
    author_email="",
    license="MIT",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Operating System :: POSIX",
        "Operating System :: MacOS",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords="topological-data-analysis reeb-graph",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    package_data={"reebsweep": ["configs/*.yaml"]},
    python_requires=">= 3.8",
    install_requires=[
        "click>=8.0",
        "graphviz",
        "hydra-core>=1.2.0",
        "matplotlib>=3.4.2",
        "networkx>=2.6.3",
        "numpy",
        "pandas",
        "scipy",
        "tqdm",
    ],
    entry_points={"console_scripts": ["reebsweep=reebsweep.cli:main"]},
)
