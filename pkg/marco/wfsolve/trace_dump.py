# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from marco.fading.geometry import Budget
from marco.utils import dump_csv_file

from .mixture import MixtureSolution, kkt_residuals

TRACE_HEADERS = ["iteration", "objective", "increment", "power_residual"]


def export_trace(solution: MixtureSolution, file_path: str, budget: Budget):
    """Write the objective trace of a solution as csv; the power residual is on the last row."""
    final_residual = kkt_residuals(solution, budget)["power"]
    trace = solution.trace

    def _rows():
        for iteration, value in enumerate(trace):
            increment = repr(value - trace[iteration - 1]) if iteration else ""
            residual = repr(final_residual) if iteration == len(trace) - 1 else ""
            yield [iteration, repr(float(value)), increment, residual]

    dump_csv_file(file_path, TRACE_HEADERS, _rows)
