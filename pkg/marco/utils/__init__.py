# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .logger import CliLogger, DummyLogger, InternalLogger, LogFormat, Logger
from .utils import dump_csv_file, format_significant

__all__ = ["Logger", "InternalLogger", "DummyLogger", "CliLogger", "LogFormat", "dump_csv_file", "format_significant"]
