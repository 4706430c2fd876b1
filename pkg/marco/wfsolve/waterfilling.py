# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from collections import namedtuple
from typing import Sequence

import numpy as np

from marco.ratebounds.capacity import LN2
from marco.utils.logger import DummyLogger

from .block_ascent import block_coordinate_ascent
from .config import SolverConfig
from .kkt import power_residuals
from .terms import SisoTerm

WaterfillResult = namedtuple("WaterfillResult", ["powers", "nu", "water_level", "channel_zero"])
OpportunisticResult = namedtuple(
    "OpportunisticResult", ["powers", "nu", "channel_zero", "iterations", "refined"]
)

# Log-domain bisection steps per multiplier update.
NU_BISECTION_STEPS = 200
# Cycles without a smaller power residual before switching to block ascent.
MAX_IDLE_CYCLES = 3


def waterfill_single(gains: Sequence[float], fraction: float, p_bar: float) -> WaterfillResult:
    """Water-filling of one transmitter over equiprobable fading states.

    Powers are ``(W - fraction / g)^+`` with water level ``W = fraction / (nu ln2)``
    chosen so the average power is exactly ``p_bar``. The level is found by
    sorting the inverse gains and growing the set of states that get power.

    Args:
        gains (Sequence[float]): Per-state power gains |h|^2 >= 0.
        fraction (float): Bandwidth fraction, theta for sources, 1 - theta for the relay.
        p_bar (float): Average power limit.

    Returns:
        WaterfillResult: Powers, nu (inf for a zero budget, 0 for a zero channel),
            water level and the zero-channel flag.
    """
    gains = np.asarray(gains, dtype=np.float64)
    n = gains.size
    if p_bar <= 0:
        return WaterfillResult(np.zeros(n), np.inf, 0.0, False)
    usable = gains > 0
    if not np.any(usable):
        return WaterfillResult(np.zeros(n), 0.0, 0.0, True)

    floors = np.sort(fraction / gains[usable])
    levels = (n * p_bar + np.cumsum(floors)) / np.arange(1, floors.size + 1)
    # The level that fills m states must clear the m-th smallest floor.
    filled = int(np.nonzero(levels > floors)[0][-1]) + 1
    water_level = float(levels[filled - 1])

    powers = np.zeros(n)
    powers[usable] = np.maximum(water_level - fraction / gains[usable], 0.0)
    return WaterfillResult(powers, fraction / (water_level * LN2), water_level, False)


def _opportunistic_powers(gains: np.ndarray, theta: float, nu: np.ndarray, live: np.ndarray) -> np.ndarray:
    """The user with the largest g / nu transmits with its water-filling power; lowest index wins ties."""
    n, k = gains.shape
    with np.errstate(divide="ignore", invalid="ignore"):
        score = np.where(live[None, :], gains / nu[None, :], -np.inf)
    winner = np.argmax(score, axis=1)
    rows = np.arange(n)
    g = gains[rows, winner]
    powers = np.zeros((n, k))
    with np.errstate(divide="ignore"):
        level = theta / (nu[winner] * LN2)
        power = np.where(g > 0, level - theta / np.where(g > 0, g, 1.0), 0.0)
    powers[rows, winner] = np.maximum(power, 0.0)
    powers[:, ~live] = 0.0
    return powers


def _bisect_nu(gains, theta, nu, live, user, p_bar) -> float:
    """Log-domain bisection of one multiplier with the others fixed."""
    def _mean_power(value: float) -> float:
        trial = nu.copy()
        trial[user] = value
        return float(np.mean(_opportunistic_powers(gains, theta, trial, live)[:, user]))

    # Above max g / ln2 the user never has positive power.
    hi = float(np.max(gains[:, user])) / LN2
    lo = hi * 0.5
    while _mean_power(lo) < p_bar:
        lo *= 0.5
    for _ in range(NU_BISECTION_STEPS):
        mid = np.sqrt(lo * hi)
        if mid <= lo or mid >= hi:
            break
        if _mean_power(mid) > p_bar:
            lo = mid
        else:
            hi = mid
    return float(np.sqrt(lo * hi))


def waterfill_mac_opportunistic(
    gains: np.ndarray, theta: float, p_bars: Sequence[float], cfg: SolverConfig = SolverConfig(),
    logger=DummyLogger()
) -> OpportunisticResult:
    """Sum-rate optimal powers of a fading multiaccess channel with one receiver.

    In every state only the user with the largest ``g_k / nu_k`` transmits, with
    water-filling power ``(theta / (nu_k ln2) - theta / g_k)^+``. The multipliers
    are tuned by coordinate-wise bisection. On a finite ensemble a user's average
    power jumps when a state changes hands, so when the cycles stop improving the
    power residual, the allocation is scaled to be feasible and refined by block
    ascent on the sum rate, which splits the contested states.

    Args:
        gains (np.ndarray): n x K power gains.
        theta (float): Bandwidth fraction of the sources.
        p_bars (Sequence[float]): K average power limits.
        cfg (SolverConfig): Tolerances and caps.
        logger: Logger for diagnostics.

    Returns:
        OpportunisticResult: Powers (n x K), nu, zero-channel flags, cycles and whether
            the block-ascent refinement ran.
    """
    gains = np.asarray(gains, dtype=np.float64)
    if gains.ndim == 1:
        gains = gains[:, None]
    n, k = gains.shape
    p_bars = np.asarray(p_bars, dtype=np.float64)
    channel_zero = tuple(bool(p_bars[user] > 0 and not np.any(gains[:, user] > 0)) for user in range(k))
    live = np.array([p_bars[user] > 0 and np.any(gains[:, user] > 0) for user in range(k)])
    nu = np.where(p_bars > 0, 0.0, np.inf)
    powers = np.zeros((n, k))

    if np.count_nonzero(live) == 0:
        return OpportunisticResult(powers, nu, channel_zero, 0, False)
    if np.count_nonzero(live) == 1:
        user = int(np.nonzero(live)[0][0])
        solo = waterfill_single(gains[:, user], theta, p_bars[user])
        powers[:, user] = solo.powers
        nu[user] = solo.nu
        return OpportunisticResult(powers, nu, channel_zero, 0, False)

    for user in np.nonzero(live)[0]:
        nu[user] = waterfill_single(gains[:, user], theta, p_bars[user]).nu

    best_residual = np.inf
    idle_cycles = 0
    cycle = 0
    for cycle in range(1, cfg.max_iters + 1):
        for user in np.nonzero(live)[0]:
            nu[user] = _bisect_nu(gains, theta, nu, live, user, p_bars[user])
        powers = _opportunistic_powers(gains, theta, nu, live)
        residual = float(np.max(power_residuals(powers, p_bars, nu)))
        if residual <= cfg.power_tol:
            logger.debug(f"opportunistic water-filling met the power limits after {cycle} cycles")
            return OpportunisticResult(powers, nu, channel_zero, cycle, False)
        if residual < best_residual * (1.0 - 1e-9):
            best_residual, idle_cycles = residual, 0
        else:
            idle_cycles += 1
            if idle_cycles >= MAX_IDLE_CYCLES:
                break

    logger.debug(f"opportunistic cycles stalled at power residual {residual:.3g}, refining by block ascent")
    means = powers.mean(axis=0)
    over = means > p_bars
    powers[:, over] *= p_bars[over] / means[over]
    full = (1 << k) - 1
    for user in np.nonzero(~live)[0]:
        full &= ~(1 << int(user))
    refined = block_coordinate_ascent([SisoTerm(1.0, gains, full, theta)], p_bars, cfg, initial=powers, logger=logger)
    nu = np.where(live, refined.nu, nu)
    return OpportunisticResult(refined.powers, nu, channel_zero, cycle + refined.iterations, True)
