# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from functools import cached_property
from typing import Callable, Dict

import numpy as np

from marco.fading.ensemble import FadingEnsemble
from marco.fading.geometry import DESTINATION, RELAY, Budget
from marco.setfn import BoundFamily, SetFunction, full_mask
from marco.utils.exception.ratebounds_exception import InvalidReceiverError
from marco.utils.exception.setfn_exception import EmptySubsetError

from .capacity import siso_rate_samples, simo_rate_samples
from .policy import PowerPolicy, check_policy


class RateRegionPair:
    """Relay-side and destination-side rate bounds of one policy, evaluated lazily.

    Each subset value is computed on first use and kept.

    Args:
        k (int): User count.
        relay_bound (Callable[[int], float]): Relay-side bound of a bitmask.
        destination_bound (Callable[[int], float]): Destination-side bound of a bitmask.
        family (BoundFamily): Whether the pair holds DF or cutset bounds.
    """

    def __init__(
        self, k: int, relay_bound: Callable[[int], float], destination_bound: Callable[[int], float],
        family: BoundFamily = BoundFamily.DF
    ):
        self._k = k
        self._bounds = {RELAY: relay_bound, DESTINATION: destination_bound}
        self._cache: Dict[str, Dict[int, float]] = {RELAY: {0: 0.0}, DESTINATION: {0: 0.0}}
        self._family = family

    @property
    def k(self) -> int:
        return self._k

    @property
    def family(self) -> BoundFamily:
        return self._family

    def bound(self, receiver: str, mask: int) -> float:
        if receiver not in self._bounds:
            raise InvalidReceiverError(f"Receiver must be '{RELAY}' or '{DESTINATION}', got {receiver!r}.")
        cache = self._cache[receiver]
        if mask not in cache:
            cache[mask] = float(self._bounds[receiver](mask))
        return cache[mask]

    def relay(self, mask: int) -> float:
        return self.bound(RELAY, mask)

    def destination(self, mask: int) -> float:
        return self.bound(DESTINATION, mask)

    @cached_property
    def f_relay(self) -> SetFunction:
        return SetFunction(self._k, [self.relay(mask) for mask in range(1, full_mask(self._k) + 1)])

    @cached_property
    def f_dest(self) -> SetFunction:
        return SetFunction(self._k, [self.destination(mask) for mask in range(1, full_mask(self._k) + 1)])

    def split_sum(self, mask: int) -> float:
        """Relay bound of mask plus destination bound of its complement."""
        return self.relay(mask) + self.destination(full_mask(self._k) ^ mask)

    def split_sums(self) -> np.ndarray:
        return np.array([self.split_sum(mask) for mask in range(full_mask(self._k) + 1)])


def _destination_bound(ens: FadingEnsemble, policy: PowerPolicy, budget: Budget) -> Callable[[int], float]:
    relay_term = float(np.mean(
        siso_rate_samples(ens.relay_link_power_gain[:, None], policy.relay[:, None], 1, budget.theta_bar)
    ))

    def _bound(mask: int) -> float:
        if mask == 0:
            return 0.0
        sources = float(np.mean(siso_rate_samples(ens.destination_power_gains, policy.sources, mask, budget.theta)))
        return sources + relay_term

    return _bound


def df_bounds(ens: FadingEnsemble, policy: PowerPolicy, budget: Budget) -> RateRegionPair:
    """DF multiaccess bounds at the relay and at the destination.

    f_relay(S) = mean theta C(sum_{k in S} |H_{r,k}|^2 P_k / theta) and
    f_dest(S) = mean [theta C(sum_{k in S} |H_{d,k}|^2 P_k / theta) + (1 - theta) C(|H_{d,r}|^2 P_r / (1 - theta))].
    """
    check_policy(ens, policy, budget)

    def _relay_bound(mask: int) -> float:
        return float(np.mean(siso_rate_samples(ens.relay_power_gains, policy.sources, mask, budget.theta)))

    return RateRegionPair(ens.k, _relay_bound, _destination_bound(ens, policy, budget), BoundFamily.DF)


def cutset_bounds(ens: FadingEnsemble, policy: PowerPolicy, budget: Budget) -> RateRegionPair:
    """Cutset outer bounds: a SIMO bound with relay and destination as one receiver, and the DF destination bound."""
    check_policy(ens, policy, budget)

    def _simo_bound(mask: int) -> float:
        return float(np.mean(
            simo_rate_samples(ens.relay_gains, ens.destination_gains, policy.sources, mask, budget.theta)
        ))

    return RateRegionPair(ens.k, _simo_bound, _destination_bound(ens, policy, budget), BoundFamily.CUTSET)


def bounds_for(family: BoundFamily, ens: FadingEnsemble, policy: PowerPolicy, budget: Budget) -> RateRegionPair:
    return cutset_bounds(ens, policy, budget) if family == BoundFamily.CUTSET else df_bounds(ens, policy, budget)


def successive_min_rate(pair: RateRegionPair, subset: int, receiver: str) -> float:
    """Rate of the users in subset when everyone else is decoded first: f_j(K) - f_j(K \\ S)."""
    if subset == 0:
        raise EmptySubsetError("Successive minimum rate needs a nonempty subset.")
    everyone = full_mask(pair.k)
    return pair.bound(receiver, everyone) - pair.bound(receiver, everyone ^ subset)
