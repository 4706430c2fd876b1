# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import math
from dataclasses import asdict, dataclass, field, fields
from typing import Tuple

from marco.utils.exception.solver_exception import InvalidSolverConfigError

TIE_BREAK_LOWER_INDEX = "lower_index"


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and caps shared by every solver.

    Args:
        power_tol (float): Relative tolerance on meeting an average power limit.
        kkt_tol (float): Largest accepted KKT stationarity residual.
        iter_tol (float): Relative objective change that stops an iterative solver.
        max_iters (int): Sweep cap of the iterative solvers.
        alpha_tol (float): Relative residual of a boundary equality condition.
        condition_tol (float): Relative width of the band in which split sums count as tied.
        stall_sweeps (int): Flat-objective sweeps after which a block ascent is converged.
        tie_break (str): Scheduling tie rule, only ``lower_index`` is supported.
    """
    power_tol: float = 1e-8
    kkt_tol: float = 1e-7
    iter_tol: float = 1e-10
    max_iters: int = 10000
    alpha_tol: float = 1e-6
    condition_tol: float = 1e-6
    stall_sweeps: int = 25
    tie_break: str = TIE_BREAK_LOWER_INDEX

    def __post_init__(self):
        for name in ("power_tol", "kkt_tol", "iter_tol", "alpha_tol", "condition_tol"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise InvalidSolverConfigError(f"{name} must be a positive number, got {value!r}.")
        for name in ("max_iters", "stall_sweeps"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvalidSolverConfigError(f"{name} must be a positive integer, got {value!r}.")
        if self.tie_break != TIE_BREAK_LOWER_INDEX:
            raise InvalidSolverConfigError(f"Unsupported tie break {self.tie_break!r}.")

    @classmethod
    def field_names(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DualVariables:
    """Power multipliers nu (K sources then the relay) and the boundary weights alpha."""
    nu: Tuple[float, ...]
    alpha: Tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(float(v) for v in self.nu))
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        assert all(v >= 0 for v in self.nu), f"negative power multiplier in {self.nu}"
        assert all(0 <= a <= 1 for a in self.alpha) and sum(self.alpha) <= 1 + 1e-12, f"bad weights {self.alpha}"
