# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from typing import Sequence, Tuple

from marco.fading.geometry import DESTINATION, RELAY
from marco.ratebounds.bounds import RateRegionPair
from marco.setfn.set_function import format_subset, full_mask, subset_mask, subset_users
from marco.utils.exception.setfn_exception import MalformedPermutationError


def _check_permutation(order: Sequence[int], mask: int, side: str):
    if len(order) != len(set(order)) or subset_mask(order) != mask:
        raise MalformedPermutationError(
            f"{side} order {list(order)} is not a permutation of {format_subset(mask)}."
        )


def _successive(pair: RateRegionPair, receiver: str, order: Sequence[int]) -> dict:
    rates = {}
    decoded = 0
    for user in order:
        grown = decoded | subset_mask([user])
        rates[user] = pair.bound(receiver, grown) - pair.bound(receiver, decoded)
        decoded = grown
    return rates


def kuser_clustered_corner_rates(
    pair: RateRegionPair, subset: int, pi_s: Sequence[int], pi_comp: Sequence[int]
) -> Tuple[float, ...]:
    """Corner rates of an inactive case: S decoded at the relay, K\\S at the destination.

    In each order the first user is decoded last and sees no interference; user
    pi(j) gets f({pi(1..j)}) - f({pi(1..j-1)}). The rates of S sum to f_relay(S)
    and those of K\\S to f_dest(K\\S).

    Args:
        pair (RateRegionPair): Bounds at a fixed policy.
        subset (int): Bitmask of S, nonempty and proper.
        pi_s (Sequence[int]): Users of S (1-based), in weight order.
        pi_comp (Sequence[int]): Users of K\\S (1-based), in weight order.

    Returns:
        tuple: Rates of users 1..K.
    """
    everyone = full_mask(pair.k)
    if not 0 < subset < everyone:
        raise MalformedPermutationError(f"Subset {format_subset(subset)} must be nonempty and proper.")
    _check_permutation(pi_s, subset, "Relay")
    _check_permutation(pi_comp, everyone ^ subset, "Destination")

    rates = _successive(pair, RELAY, pi_s)
    rates.update(_successive(pair, DESTINATION, pi_comp))
    return tuple(float(rates[user]) for user in subset_users(everyone))
