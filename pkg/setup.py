# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import io

from setuptools import find_packages, setup

from marco import __version__

readme = io.open("./README.md", encoding="utf-8").read()

setup(
    name="pymarco",
    version=__version__,
    description="Decode-and-forward rates, power policies and cutset bounds for fading multiaccess relay channels",
    long_description=readme,
    long_description_content_type="text/markdown",
    license="MIT License",
    platforms=["Windows", "Linux", "macOS"],
    keywords=[
        "decode-and-forward",
        "multiaccess-relay-channel",
        "polymatroid",
        "power-allocation",
        "water-filling"],
    classifiers=[
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Operating System :: MacOS",
        "Operating System :: Microsoft :: Windows",
        "Operating System :: POSIX",
        "Operating System :: Unix",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics"],
    python_requires=">=3.9,<3.13",
    install_requires=[
        "numpy==1.26.4",
        "scipy==1.11.4",
        "pandas==2.1.4",
        "PyYAML==6.0.1",
        "deepdiff==6.7.1"
    ],
    entry_points={
        "console_scripts": [
            "marc-opt=marco.cli.marco:main",
        ]
    },
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    include_package_data=True,
    package_data={
        "marco.cli.sweep": ["template/*.yml"],
    },
    zip_safe=False,
)
