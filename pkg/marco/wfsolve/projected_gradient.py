# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from collections import namedtuple
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from marco.utils.exception.solver_exception import SolverNonConvergenceError
from marco.utils.logger import DummyLogger

from .config import SolverConfig

PgaResult = namedtuple("PgaResult", ["powers", "objective", "trace", "iterations"])

ARMIJO_SIGMA = 1e-4
MIN_STEP = 1e-20

Objective = Callable[[np.ndarray], Tuple[float, Optional[np.ndarray]]]


def project_column(y: np.ndarray, p_bar: float) -> np.ndarray:
    """Euclidean projection of one power column onto {x >= 0, mean x <= p_bar}.

    Inside the budget the projection is the positive part. Otherwise every entry
    is lowered by the same shift tau, found from the sorted column, until the
    mean is exactly p_bar.
    """
    x = np.maximum(y, 0.0)
    if p_bar <= 0:
        return np.zeros_like(x)
    if np.mean(x) <= p_bar:
        return x
    n = y.size
    ordered = np.sort(y)[::-1]
    shifts = (np.cumsum(ordered) - n * p_bar) / np.arange(1, n + 1)
    count = int(np.nonzero(ordered > shifts)[0][-1]) + 1
    return np.maximum(y - shifts[count - 1], 0.0)


def project(powers: np.ndarray, p_bars: Sequence[float]) -> np.ndarray:
    return np.column_stack([project_column(powers[:, user], p_bar) for user, p_bar in enumerate(p_bars)])


def central_difference_gradient(objective: Objective, powers: np.ndarray, step: float) -> np.ndarray:
    """Gradient by central differences; one-sided at entries closer than ``step`` to zero."""
    gradient = np.zeros_like(powers)
    for index in np.ndindex(*powers.shape):
        up = powers.copy()
        up[index] += step
        down = powers.copy()
        down[index] = max(down[index] - step, 0.0)
        width = up[index] - down[index]
        gradient[index] = (objective(up)[0] - objective(down)[0]) / width
    return gradient


def projected_gradient_concave(
    objective: Objective, p_bars: Sequence[float], n: int, cfg: SolverConfig = SolverConfig(),
    initial: Optional[np.ndarray] = None, logger=DummyLogger()
) -> PgaResult:
    """Projected gradient ascent of a concave sample-mean objective over the power budget.

    Steps follow the per-sample gradient (n times the gradient of the mean). The
    Armijo rule accepts a step only if it raises the objective, doubling the step
    after a first-try acceptance and halving it otherwise, so the trace is monotone.

    Args:
        objective (Callable): Maps n x K powers to (value, gradient of the value or None).
            A None gradient is replaced by central differences.
        p_bars (Sequence[float]): K average power limits.
        n (int): Sample count.
        cfg (SolverConfig): Tolerances and caps.
        initial (np.ndarray): Starting powers, projected first. Defaults to the full budget everywhere.
        logger: Logger for diagnostics.

    Returns:
        PgaResult: Powers, objective, trace (starting at the initial point) and iterations.
    """
    p_bars = np.asarray(p_bars, dtype=np.float64)
    scale = max(1.0, float(np.max(p_bars)))
    if np.all(p_bars <= 0):
        powers = np.zeros((n, p_bars.size))
        value = float(objective(powers)[0])
        return PgaResult(powers, value, [value], 0)

    def _evaluate(x: np.ndarray):
        value, gradient = objective(x)
        if gradient is None:
            gradient = central_difference_gradient(objective, x, 1e-6 * scale)
        return float(value), gradient

    powers = project(np.tile(p_bars, (n, 1)) if initial is None else np.asarray(initial, np.float64), p_bars)
    value, gradient = _evaluate(powers)
    trace = [value]
    step = 1.0
    flat = 0

    for iteration in range(1, cfg.max_iters + 1):
        direction = gradient * n
        first_try = True
        while True:
            candidate = project(powers + step * direction, p_bars)
            candidate_value = float(objective(candidate)[0])
            if candidate_value >= value + ARMIJO_SIGMA * float(np.sum(gradient * (candidate - powers))):
                break
            step *= 0.5
            first_try = False
            if step < MIN_STEP:
                logger.debug(f"projected gradient found no ascent step at {value:.12g}")
                return PgaResult(powers, value, trace, iteration)

        moved = float(np.max(np.abs(candidate - powers)))
        change = candidate_value - value
        if candidate_value >= value:
            powers = candidate
            value, gradient = _evaluate(powers)
        trace.append(value)
        if first_try:
            step *= 2.0

        small = change <= cfg.iter_tol * max(1.0, abs(value))
        if small and moved <= cfg.power_tol * scale:
            return PgaResult(powers, value, trace, iteration)
        flat = flat + 1 if small else 0
        if flat >= cfg.stall_sweeps:
            return PgaResult(powers, value, trace, iteration)

    raise SolverNonConvergenceError(
        f"Projected gradient did not converge in {cfg.max_iters} iterations.",
        residuals={"objective_change": trace[-1] - trace[-2]}, trace=trace
    )
