# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import os
import shutil

from marco.cli.utils.params import GlobalEnvs
from marco.utils.exception.cli_exception import CommandError, ParsingError, SolverDiagnosticsError
from marco.utils.logger import CliLogger

from .config import TEMPLATE_PATH, load_config
from .runner import dump_sweep_csv, run_sweep

logger = CliLogger(name=__name__)


def _env_seed():
    value = os.environ.get(GlobalEnvs.SEED)
    if value is None or value == "":
        return None
    try:
        return int(value)
    except ValueError:
        raise ParsingError(f"{GlobalEnvs.SEED} must be an integer, got {value!r}.")


def sweep(config: str, out: str = None, seed: int = None, **kwargs):
    """Run a relay-position sweep and write its CSV.

    The seed is taken from ``--seed``, then ``MARC_OPT_SEED``, then the config.

    Raises:
        ConfigValidationError: The config is invalid (exit code 2).
        SolverDiagnosticsError: The CSV was written but some rows carry solver diagnostics (exit code 3).
    """
    if not os.path.isfile(os.path.expanduser(config)):
        raise CommandError("sweep", f"Config file {config} not found.")
    experiment = load_config(config)
    seed = seed if seed is not None else _env_seed()
    experiment = experiment.with_overrides(seed=seed, output_path=out)

    logger.info(
        f"Sweeping {experiment.relay_x[2]} relay positions, K={experiment.k}, "
        f"n={experiment.n}, seed={experiment.seed}"
    )
    rows = run_sweep(experiment, logger)
    dump_sweep_csv(rows, os.path.expanduser(experiment.output_path))

    flagged = [row for row in rows if row.flagged]
    if flagged:
        raise SolverDiagnosticsError(
            f"{len(flagged)} of {len(rows)} rows carry solver diagnostics, see {experiment.output_path}."
        )
    logger.info_green(f"Sweep written to {experiment.output_path}")


def template(export_path: str, **kwargs):
    """Copy the default sweep config to ``export_path``."""
    export_path = os.path.expanduser(export_path)
    folder = os.path.dirname(os.path.abspath(export_path))
    os.makedirs(folder, exist_ok=True)
    shutil.copyfile(TEMPLATE_PATH, export_path)
    logger.info_green(f"Template written to {export_path}")
