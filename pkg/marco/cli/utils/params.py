# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.


import logging


class GlobalParams:
    LOG_LEVEL = logging.INFO


class GlobalPaths:
    MARCO_LOG = "~/.marco/log"
    MARCO_CLI_LOG = "~/.marco/log/cli"


class GlobalEnvs:
    SEED = "MARC_OPT_SEED"
    LOG_LEVEL = "LOG_LEVEL"
