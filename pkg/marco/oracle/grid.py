# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

"""Exhaustive power-grid search on tiny instances.

Every source spends its whole budget: its per-sample powers are the
compositions of ``steps_per_axis - 1`` quanta of ``n * p_bar / (steps_per_axis - 1)``
over the n samples. Bounds grow with power, so the best grid policy spends the
budget. The relay only adds a constant to every destination bound and is fixed at
its water-filling on the relay-to-destination link.
"""

import itertools
import math
from collections import namedtuple
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from marco.fading.ensemble import FadingEnsemble
from marco.fading.geometry import Budget
from marco.ratebounds.capacity import LN2, capacity
from marco.ratebounds.policy import PowerPolicy
from marco.setfn.intersection import two_user_weighted_optimum
from marco.setfn.set_function import full_mask
from marco.utils.exception.oracle_exception import GridGuardExceededError, InvalidGridSpecError
from marco.utils.logger import DummyLogger
from marco.wfsolve.waterfilling import waterfill_single

MAX_GRID_POINTS = 10 ** 8
MAX_ORACLE_SAMPLES = 8
MAX_ORACLE_USERS = 2
CHUNK_POINTS = 1 << 14

GridOptimum = namedtuple("GridOptimum", ["value", "policy", "points"])


@dataclass(frozen=True)
class GridSpec:
    """Power levels per sample axis and the cap on evaluated grid points."""
    steps_per_axis: int
    guard: int = MAX_GRID_POINTS

    def __post_init__(self):
        if isinstance(self.steps_per_axis, bool) or not isinstance(self.steps_per_axis, int) \
                or self.steps_per_axis < 2:
            raise InvalidGridSpecError(f"Grid needs at least 2 steps per axis, got {self.steps_per_axis!r}.")
        if not 1 <= self.guard <= MAX_GRID_POINTS:
            raise InvalidGridSpecError(f"Guard must lie in 1..{MAX_GRID_POINTS}, got {self.guard}.")

    @property
    def quanta(self) -> int:
        return self.steps_per_axis - 1


def compositions(total: int, parts: int) -> np.ndarray:
    """All ways to write ``total`` as an ordered sum of ``parts`` non-negative integers, lexicographic."""
    rows = []
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        edges = (-1,) + bars + (total + parts - 1,)
        rows.append([edges[i + 1] - edges[i] - 1 for i in range(parts)])
    return np.array(rows, dtype=np.int64)


def _check_instance(ens: FadingEnsemble, max_users: int = MAX_ORACLE_USERS):
    if ens.n > MAX_ORACLE_SAMPLES or ens.k > max_users:
        raise InvalidGridSpecError(
            f"Oracle handles n <= {MAX_ORACLE_SAMPLES} and K <= {max_users}, got n={ens.n}, K={ens.k}."
        )


def _axis_levels(ens: FadingEnsemble, budget: Budget, grid: GridSpec):
    """Per-user candidate power columns, shape (M_k, n)."""
    levels = []
    for p_bar in budget.source_budgets:
        if p_bar == 0:
            levels.append(np.zeros((1, ens.n)))
        else:
            step = ens.n * p_bar / grid.quanta
            levels.append(compositions(grid.quanta, ens.n) * step)
    return levels


def grid_size(ens: FadingEnsemble, budget: Budget, grid: GridSpec) -> int:
    per_user = [1 if p_bar == 0 else math.comb(grid.quanta + ens.n - 1, ens.n - 1) for p_bar in budget.source_budgets]
    return math.prod(per_user)


def _search(ens: FadingEnsemble, budget: Budget, grid: GridSpec, mu: Optional[Sequence[float]], logger) -> GridOptimum:
    size = grid_size(ens, budget, grid)
    if size > grid.guard:
        raise GridGuardExceededError(f"Grid has {size} points, guard is {grid.guard}.")

    k, theta = ens.k, budget.theta
    relay = waterfill_single(ens.relay_link_power_gain, budget.theta_bar, budget.relay_budget).powers
    relay_term = float(np.mean(budget.theta_bar * capacity(ens.relay_link_power_gain * relay / budget.theta_bar)))
    levels = _axis_levels(ens, budget, grid)
    shape = tuple(level.shape[0] for level in levels)
    a, b = ens.relay_power_gains, ens.destination_power_gains
    everyone = full_mask(k)

    best_value, best_index = -np.inf, 0
    for start in range(0, size, CHUNK_POINTS):
        flat = np.arange(start, min(start + CHUNK_POINTS, size))
        indices = np.unravel_index(flat, shape)
        powers = np.stack([levels[user][indices[user]] for user in range(k)], axis=2)

        relay_bound, dest_bound = {0: 0.0}, {0: 0.0}
        for mask in range(1, everyone + 1):
            columns = [user for user in range(k) if mask >> user & 1]
            received_r = np.einsum("cnk,nk->cn", powers[:, :, columns], a[:, columns])
            received_d = np.einsum("cnk,nk->cn", powers[:, :, columns], b[:, columns])
            relay_bound[mask] = np.mean(theta * capacity(received_r / theta), axis=1)
            dest_bound[mask] = np.mean(theta * capacity(received_d / theta), axis=1) + relay_term
        sum_rate = np.min(
            np.stack([relay_bound[mask] + dest_bound[everyone ^ mask] * np.ones(flat.size)
                      for mask in range(everyone + 1)]),
            axis=0
        )
        if mu is None:
            values = sum_rate
        else:
            single = [np.minimum(relay_bound[mask], dest_bound[mask]) for mask in (1, 2)]
            values = two_user_weighted_optimum(single[0], single[1], sum_rate, mu)[2]

        position = int(np.argmax(values))
        if values[position] > best_value:
            best_value, best_index = float(values[position]), int(flat[position])

    indices = np.unravel_index(best_index, shape)
    sources = np.stack([levels[user][indices[user]] for user in range(k)], axis=1)
    logger.debug(f"grid oracle: {size} points, best {best_value:.12g}")
    return GridOptimum(best_value, PowerPolicy.from_columns(sources, relay), size)


def grid_best_sum_rate(ens: FadingEnsemble, budget: Budget, grid: GridSpec, logger=DummyLogger()) -> GridOptimum:
    """Best DF sum rate over the power grid.

    The sum rate at each grid policy is the minimum split sum of the DF bounds.
    Ties keep the first grid point in lexicographic order.

    Raises:
        InvalidGridSpecError: n > 8 or K > 2.
        GridGuardExceededError: The grid has more points than ``grid.guard``.
    """
    _check_instance(ens)
    return _search(ens, budget, grid, None, logger)


def grid_best_weighted(
    ens: FadingEnsemble, budget: Budget, grid: GridSpec, mu: Sequence[float], logger=DummyLogger()
) -> GridOptimum:
    """Best mu1 R1 + mu2 R2 over the power grid, from the region's weighted vertex at each point."""
    _check_instance(ens)
    if ens.k != 2:
        raise InvalidGridSpecError(f"Weighted oracle needs K = 2, got {ens.k}.")
    return _search(ens, budget, grid, tuple(float(m) for m in mu), logger)


def grid_bound(ens: FadingEnsemble, budget: Budget, grid: GridSpec, mu: Optional[Sequence[float]] = None) -> float:
    """Largest gap between the grid optimum and the continuous optimum.

    Rounding any budget-spending policy to the grid moves each per-sample power by
    less than one quantum, and each split sum changes by at most
    max(|H_r|^2, |H_d|^2) / (n ln 2) per unit of one sample's power. The weighted
    objective scales this by the largest weight.
    """
    gains = np.maximum(ens.relay_power_gains, ens.destination_power_gains)
    quantum = ens.n * budget.source_budgets / grid.quanta
    bound = float(np.sum(quantum * np.mean(gains, axis=0)) / LN2)
    return bound * (max(mu) if mu is not None else 1.0)
