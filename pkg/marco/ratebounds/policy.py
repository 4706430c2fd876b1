# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import numpy as np

from marco.fading.ensemble import FadingEnsemble
from marco.fading.geometry import Budget
from marco.utils.exception.ratebounds_exception import NegativePowerError, PolicyDimensionError


class PowerPolicy:
    """Per-sample transmit powers: an n x (K+1) matrix, the relay in the last column.

    Args:
        powers (np.ndarray): Non-negative finite powers.
    """

    def __init__(self, powers: np.ndarray):
        powers = np.array(powers, dtype=np.float64)
        if powers.ndim != 2 or powers.shape[1] < 2 or powers.shape[0] < 1:
            raise PolicyDimensionError(f"Policy must be an n x (K+1) matrix, got shape {powers.shape}.")
        if not np.all(np.isfinite(powers)):
            raise NegativePowerError("Policy powers must be finite.")
        if np.any(powers < 0):
            raise NegativePowerError(f"Policy has negative powers, smallest {powers.min()}.")
        powers.flags.writeable = False
        self._powers = powers

    @classmethod
    def from_columns(cls, sources: np.ndarray, relay: np.ndarray) -> "PowerPolicy":
        return cls(np.column_stack([np.asarray(sources, dtype=np.float64), np.asarray(relay, dtype=np.float64)]))

    @classmethod
    def zeros(cls, n: int, k: int) -> "PowerPolicy":
        return cls(np.zeros((n, k + 1)))

    @property
    def powers(self) -> np.ndarray:
        return self._powers

    @property
    def sources(self) -> np.ndarray:
        return self._powers[:, :-1]

    @property
    def relay(self) -> np.ndarray:
        return self._powers[:, -1]

    @property
    def n(self) -> int:
        return self._powers.shape[0]

    @property
    def k(self) -> int:
        return self._powers.shape[1] - 1

    def mean_powers(self) -> np.ndarray:
        return self._powers.mean(axis=0)

    def power_residuals(self, budget: Budget) -> np.ndarray:
        """Average power minus limit per transmitter; positive entries overdraw."""
        return self.mean_powers() - budget.limits

    def feasible(self, budget: Budget, tol: float = 1e-8) -> bool:
        return bool(np.all(self.power_residuals(budget) <= tol * np.maximum(1.0, budget.limits)))

    def mix(self, other: "PowerPolicy", weight: float) -> "PowerPolicy":
        """(1 - weight) * self + weight * other."""
        return PowerPolicy((1.0 - weight) * self._powers + weight * other._powers)

    def __repr__(self) -> str:
        return f"PowerPolicy(n={self.n}, k={self.k}, mean={np.round(self.mean_powers(), 6).tolist()})"


def check_policy(ens: FadingEnsemble, policy: PowerPolicy, budget: Budget = None):
    if policy.n != ens.n or policy.k != ens.k:
        raise PolicyDimensionError(
            f"Policy is {policy.n} x {policy.k + 1}, ensemble needs {ens.n} x {ens.k + 1}."
        )
    if budget is not None and budget.k != ens.k:
        raise PolicyDimensionError(f"Budget covers {budget.k} sources, ensemble has {ens.k}.")


def constant_policy(budget: Budget, n: int) -> PowerPolicy:
    """Every transmitter at its full average power in every sample."""
    return PowerPolicy(np.tile(budget.limits, (n, 1)))
