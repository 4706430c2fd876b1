# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from collections import namedtuple
from typing import List, Optional, Sequence

import numpy as np

from marco.utils.exception.solver_exception import SolverNonConvergenceError
from marco.utils.logger import DummyLogger

from .config import SolverConfig
from .kkt import power_residuals, solve_user_dual, stationarity_residual
from .terms import RateTerm, objective_value

# Exact coordinate steps can lose this much to rounding.
ROUNDING_SLACK = 1e-14

BlockAscentResult = namedtuple(
    "BlockAscentResult", ["powers", "nu", "objective", "trace", "iterations", "channel_zero"]
)


def _user_coefficients(terms: Sequence[RateTerm], powers: np.ndarray, user: int):
    rows = [term.kkt_coefficients(powers, user) for term in terms if term.covers(user)]
    if not rows:
        return None
    a, d, e = (np.vstack(column) for column in zip(*rows))
    return a, d, e


def block_coordinate_ascent(
    terms: Sequence[RateTerm], p_bars: Sequence[float], cfg: SolverConfig, initial: Optional[np.ndarray] = None,
    logger=DummyLogger()
) -> BlockAscentResult:
    """Maximize a sum of concave rate terms over the sources' powers, one user at a time.

    Each step fixes every other user and solves the per-sample KKT equation of
    one user with its multiplier set by the power limit. A step that would lower
    the objective is discarded, so the objective trace never decreases.

    Args:
        terms (Sequence[RateTerm]): Objective terms.
        p_bars (Sequence[float]): K average power limits.
        cfg (SolverConfig): Tolerances and caps.
        initial (np.ndarray): Feasible n x K starting powers. Defaults to the full budget everywhere.
        logger: Logger for sweep diagnostics.

    Returns:
        BlockAscentResult: Powers (n x K), nu per user, objective, trace (one entry per
            sweep, the first at the initial point), sweeps used and zero-channel flags.
    """
    p_bars = np.asarray(p_bars, dtype=np.float64)
    k = p_bars.size
    n = terms[0].n if initial is None else initial.shape[0]
    powers = np.tile(p_bars, (n, 1)) if initial is None else np.array(initial, dtype=np.float64)
    nu = np.zeros(k)
    channel_zero = [False] * k
    covered = [any(term.covers(user) for term in terms) for user in range(k)]
    for user in range(k):
        if not covered[user]:
            powers[:, user] = 0.0

    objective = objective_value(terms, powers)
    trace: List[float] = [objective]
    stalled = 0
    power_scale = max(1.0, float(np.max(p_bars))) if k else 1.0

    for sweep in range(1, cfg.max_iters + 1):
        previous_powers = powers.copy()
        previous_objective = objective
        for user in range(k):
            if not covered[user]:
                continue
            a, d, e = _user_coefficients(terms, powers, user)
            dual = solve_user_dual(a, d, e, p_bars[user], cfg)
            candidate = powers.copy()
            candidate[:, user] = dual.powers
            candidate_objective = objective_value(terms, candidate)
            if candidate_objective >= objective - ROUNDING_SLACK * max(1.0, abs(objective)):
                powers, objective = candidate, candidate_objective
                nu[user], channel_zero[user] = dual.nu, dual.channel_zero
        trace.append(objective)

        change = objective - previous_objective
        moved = float(np.max(np.abs(powers - previous_powers))) if powers.size else 0.0
        flat = change <= cfg.iter_tol * max(1.0, abs(objective))
        if flat and moved <= cfg.power_tol * power_scale:
            logger.debug(f"block ascent converged after {sweep} sweeps, objective {objective:.12g}")
            return BlockAscentResult(powers, nu, objective, trace, sweep, tuple(channel_zero))
        stalled = stalled + 1 if flat else 0
        if stalled >= cfg.stall_sweeps:
            logger.debug(f"block ascent flat for {stalled} sweeps at {objective:.12g}, power moves {moved:.3g}")
            return BlockAscentResult(powers, nu, objective, trace, sweep, tuple(channel_zero))

    raise SolverNonConvergenceError(
        f"Block ascent did not converge in {cfg.max_iters} sweeps.",
        residuals={"power": power_residuals(powers, p_bars, nu).tolist(), "objective_change": trace[-1] - trace[-2]},
        trace=trace
    )


def block_kkt_residual(terms: Sequence[RateTerm], powers: np.ndarray, nu: Sequence[float]) -> float:
    """Largest per-user stationarity residual of a block ascent solution."""
    worst = 0.0
    for user, nu_k in enumerate(nu):
        coefficients = _user_coefficients(terms, powers, user)
        if coefficients is None:
            continue
        worst = max(worst, stationarity_residual(*coefficients, powers[:, user], nu_k))
    return worst
