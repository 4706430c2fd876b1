# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .config import DEFAULT_CONFIG, ExperimentConfig, dumps, load_config, validate_config
from .runner import SWEEP_HEADERS, SweepRow, dump_sweep_csv, run_sweep

__all__ = [
    "DEFAULT_CONFIG", "ExperimentConfig", "dumps", "load_config", "validate_config",
    "SWEEP_HEADERS", "SweepRow", "dump_sweep_csv", "run_sweep"
]
