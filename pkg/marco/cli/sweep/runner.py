# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from dataclasses import dataclass
from typing import List

from marco.casealgo.certificate import Achieved, sum_capacity_certificate
from marco.casealgo.sum_rate import optimal_cutset_sum_rate, optimal_df_sum_rate
from marco.fading.baseline import mac_baseline_sum_capacity
from marco.fading.ensemble import relocate_relay, sample_ensemble
from marco.utils.exception.base_exception import MarcoException
from marco.utils.exception.cli_exception import CommandError
from marco.utils.logger import DummyLogger
from marco.utils.utils import dump_csv_file, format_significant

from .config import ExperimentConfig

SWEEP_HEADERS = [
    "relay_x", "df_sum_rate", "df_case", "cutset_sum_rate", "cutset_case", "mac_baseline",
    "capacity_achieved", "solver_iterations", "diagnostics"
]
NO_CASE = "none"


@dataclass
class SweepRow:
    relay_x: float
    df_sum_rate: float
    df_case: str
    cutset_sum_rate: float
    cutset_case: str
    mac_baseline: float
    capacity_achieved: bool
    solver_iterations: int
    diagnostics: str = ""

    @property
    def flagged(self) -> bool:
        return bool(self.diagnostics)

    def to_line(self) -> list:
        return [
            format_significant(self.relay_x), format_significant(self.df_sum_rate), self.df_case,
            format_significant(self.cutset_sum_rate), self.cutset_case, format_significant(self.mac_baseline),
            "true" if self.capacity_achieved else "false", self.solver_iterations, self.diagnostics
        ]


def run_sweep(config: ExperimentConfig, logger=DummyLogger()) -> List[SweepRow]:
    """DF and cutset sum rates along the relay sweep, with the no-relay MAC baseline.

    The ensemble is drawn once; each sweep point redraws only the links that touch
    the relay, so the source-to-destination draws and the baseline stay fixed.
    A solver failure on a row is recorded in its ``diagnostics`` column and the
    sweep goes on. Boundary weights found at one position seed the searches at
    the next.

    Args:
        config (ExperimentConfig): Validated sweep config.
        logger: Logger for per-row progress.

    Returns:
        List[SweepRow]: One row per relay position, in sweep order.

    Raises:
        CommandError: The base ensemble or the baseline cannot be computed.
    """
    try:
        base = sample_ensemble(config.geometry, config.n, config.seed)
        baseline = mac_baseline_sum_capacity(base, config.budget, config.solver)
    except MarcoException as e:
        raise CommandError("sweep", f"Cannot draw the base ensemble: {e}")
    positions = config.relay_positions()
    df_hints, cutset_hints = {}, {}

    rows = []
    for index, x in enumerate(positions):
        ens = relocate_relay(base, (float(x), config.relay_y))
        row = SweepRow(float(x), float("nan"), NO_CASE, float("nan"), NO_CASE, baseline, False, 0)
        problems = []
        df = ob = None
        try:
            df = optimal_df_sum_rate(ens, config.budget, config.solver, logger, df_hints)
            row.df_sum_rate, row.df_case = df.sum_rate, str(df.label)
            row.solver_iterations += df.total_iterations
        except MarcoException as e:
            problems.append(f"df: {e}")
        try:
            ob = optimal_cutset_sum_rate(ens, config.budget, config.solver, logger, cutset_hints)
            row.cutset_sum_rate, row.cutset_case = ob.sum_rate, str(ob.label)
            row.solver_iterations += ob.total_iterations
        except MarcoException as e:
            problems.append(f"cutset: {e}")
        if df is not None and ob is not None:
            row.capacity_achieved = isinstance(sum_capacity_certificate(df, ob), Achieved)

        row.diagnostics = "; ".join(problems)
        if row.flagged:
            logger.warn(f"relay_x={x:.6g}: {row.diagnostics}")
        logger.info(
            f"[{index + 1}/{len(positions)}] relay_x={x:.6g} df={row.df_sum_rate:.6g} ({row.df_case}) "
            f"cutset={row.cutset_sum_rate:.6g} ({row.cutset_case})"
        )
        rows.append(row)
    return rows


def dump_sweep_csv(rows: List[SweepRow], file_path: str):
    dump_csv_file(file_path, SWEEP_HEADERS, lambda: (row.to_line() for row in rows))
