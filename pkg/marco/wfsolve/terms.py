# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np

from marco.ratebounds.capacity import (
    LN2, mask_columns, received_power, simo_effective_gain, simo_rate_samples, simo_statistics, siso_rate_samples
)


class RateTerm(ABC):
    """One weighted multiaccess rate term ``coefficient * mean rate(mask)`` of a source objective.

    The per-user KKT condition of a sum of terms reads
    ``sum A / (D + E P_k) = nu_k ln2`` per sample, with (A, D, E) given by
    ``kkt_coefficients`` at the other users' current powers.
    """

    def __init__(self, coefficient: float, mask: int, theta: float):
        self.coefficient = float(coefficient)
        self.mask = mask
        self.theta = theta

    def covers(self, user: int) -> bool:
        """Whether zero-based user index ``user`` appears in the term."""
        return bool(self.mask >> user & 1)

    @abstractmethod
    def value_samples(self, powers: np.ndarray) -> np.ndarray:
        """Per-sample weighted rate."""
        pass

    @abstractmethod
    def kkt_coefficients(self, powers: np.ndarray, user: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        pass

    @abstractmethod
    def gradient_samples(self, powers: np.ndarray) -> np.ndarray:
        """Per-sample derivative of the weighted rate in each source power, n x K."""
        pass

    def value(self, powers: np.ndarray) -> float:
        return float(np.mean(self.value_samples(powers)))


class SisoTerm(RateTerm):
    """Single-antenna receiver: ``c * theta * C(sum_{k in S} G_k P_k / theta)``."""

    def __init__(self, coefficient: float, power_gains: np.ndarray, mask: int, theta: float):
        super().__init__(coefficient, mask, theta)
        self.power_gains = power_gains

    @property
    def n(self) -> int:
        return self.power_gains.shape[0]

    def value_samples(self, powers: np.ndarray) -> np.ndarray:
        return self.coefficient * siso_rate_samples(self.power_gains, powers, self.mask, self.theta)

    def kkt_coefficients(self, powers: np.ndarray, user: int):
        gain = self.power_gains[:, user]
        others = received_power(self.power_gains, powers, self.mask & ~(1 << user))
        return self.coefficient * self.theta * gain, self.theta + others, gain

    def gradient_samples(self, powers: np.ndarray) -> np.ndarray:
        gradient = np.zeros_like(powers)
        columns = mask_columns(self.mask, powers.shape[1])
        total = received_power(self.power_gains, powers, self.mask)
        gradient[:, columns] = self.coefficient * self.theta * self.power_gains[:, columns] \
            / (LN2 * (self.theta + total))[:, None]
        return gradient


class SimoTerm(RateTerm):
    """Two-antenna receiver formed by relay and destination: ``c * theta * log2 det(I + sum g g^H P / theta)``.

    With the other users fixed at M = I + sum_{j != k} g_j g_j^H P_j / theta, the
    determinant lemma turns user k's part into ``theta * C(e_k P_k / theta)`` with
    effective gain ``e_k = g_k^H M^{-1} g_k``.
    """

    def __init__(self, coefficient: float, hr: np.ndarray, hd: np.ndarray, mask: int, theta: float):
        super().__init__(coefficient, mask, theta)
        self.hr = hr
        self.hd = hd

    @property
    def n(self) -> int:
        return self.hr.shape[0]

    def value_samples(self, powers: np.ndarray) -> np.ndarray:
        return self.coefficient * simo_rate_samples(self.hr, self.hd, powers, self.mask, self.theta)

    def kkt_coefficients(self, powers: np.ndarray, user: int):
        a, d, b = simo_statistics(self.hr, self.hd, powers, self.mask & ~(1 << user), self.theta)
        gain = simo_effective_gain(self.hr[:, user], self.hd[:, user], a, d, b)
        return self.coefficient * self.theta * gain, np.full(gain.shape, self.theta), gain

    def gradient_samples(self, powers: np.ndarray) -> np.ndarray:
        gradient = np.zeros_like(powers)
        a, d, b = simo_statistics(self.hr, self.hd, powers, self.mask, self.theta)
        for user in mask_columns(self.mask, powers.shape[1]):
            gain = simo_effective_gain(self.hr[:, user], self.hd[:, user], a, d, b)
            gradient[:, user] = self.coefficient * gain / LN2
        return gradient


def objective_value(terms, powers: np.ndarray) -> float:
    return float(sum(term.value(powers) for term in terms))


def objective_gradient(terms, powers: np.ndarray) -> np.ndarray:
    """Gradient of the sample-mean objective."""
    gradient = np.zeros_like(powers)
    for term in terms:
        gradient += term.gradient_samples(powers)
    return gradient / powers.shape[0]
