# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from collections import namedtuple
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from marco.ratebounds.capacity import LN2

from .config import SolverConfig

ILL_CONDITIONED = 1e-14
BISECTION_STEPS = 100

UserDual = namedtuple("UserDual", ["powers", "nu", "channel_zero"])


def marginal_utility(a: np.ndarray, d: np.ndarray, e: np.ndarray, powers: np.ndarray) -> np.ndarray:
    """Per-sample sum over terms of A / (D + E P); the rows of a, d, e are terms."""
    return np.sum(a / (d + e * powers[None, :]), axis=0)


def _bisect_roots(a, d, e, u, upper):
    lo = np.zeros_like(upper)
    hi = upper.copy()
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        above = marginal_utility(a, d, e, mid) > u
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    return 0.5 * (lo + hi)


def solve_ratio_sum(a: np.ndarray, d: np.ndarray, e: np.ndarray, u: float) -> np.ndarray:
    """Per sample, the P >= 0 with sum_j A_j / (D_j + E_j P) = u, or 0 if none exists.

    The left side decreases in P. One term gives the water-filling form
    (A / u - D) / E. Two terms cross-multiply into a quadratic with exactly one
    positive root whenever P = 0 is below target. Anything else, and
    ill-conditioned quadratics, is bisected on [0, sum A / (u E)].

    Args:
        a, d, e (np.ndarray): terms x n coefficient arrays, A >= 0, D > 0, E >= 0.
        u (float): Positive target, nu ln2.

    Returns:
        np.ndarray: n powers.
    """
    a, d, e = np.atleast_2d(a), np.atleast_2d(d), np.atleast_2d(e)
    # Terms with zero gain contribute nothing.
    a = np.where(e > 0, a, 0.0)
    n = a.shape[1]
    powers = np.zeros(n)
    active = marginal_utility(a, d, e, powers) > u
    if not np.any(active):
        return powers

    a, d, e = a[:, active], d[:, active], e[:, active]
    with np.errstate(divide="ignore", invalid="ignore"):
        if a.shape[0] == 1:
            root = (a[0] / u - d[0]) / e[0]
            fallback = ~np.isfinite(root)
        elif a.shape[0] == 2:
            qa = u * e[0] * e[1]
            qb = u * (d[0] * e[1] + d[1] * e[0]) - a[0] * e[1] - a[1] * e[0]
            qc = u * d[0] * d[1] - a[0] * d[1] - a[1] * d[0]
            sqrt_disc = np.sqrt(np.maximum(qb * qb - 4.0 * qa * qc, 0.0))
            root = np.where(qb >= 0, 2.0 * qc / (-qb - sqrt_disc), (-qb + sqrt_disc) / (2.0 * qa))
            fallback = ~np.isfinite(root) | (qa < ILL_CONDITIONED)
        else:
            root = np.zeros(a.shape[1])
            fallback = np.ones(a.shape[1], dtype=bool)

    if np.any(fallback):
        upper = np.sum(np.where(e > 0, a / np.where(e > 0, e, 1.0), 0.0), axis=0) / u
        root[fallback] = _bisect_roots(a[:, fallback], d[:, fallback], e[:, fallback], u, upper[fallback])

    powers[active] = np.maximum(root, 0.0)
    return powers


def solve_user_dual(a: np.ndarray, d: np.ndarray, e: np.ndarray, p_bar: float, cfg: SolverConfig) -> UserDual:
    """Pick nu so that the per-sample KKT powers average exactly p_bar.

    Average power decreases in u = nu ln2 and vanishes from the largest
    zero-power marginal utility on. The lower end is halved until the average
    reaches p_bar, then Brent's method finds the crossing.

    Returns:
        UserDual: Powers, nu (inf for a zero budget) and whether the user's channel is identically zero.
    """
    a, d, e = np.atleast_2d(a), np.atleast_2d(d), np.atleast_2d(e)
    n = a.shape[1]
    if p_bar <= 0:
        return UserDual(np.zeros(n), np.inf, False)
    a = np.where(e > 0, a, 0.0)
    u_max = float(np.max(marginal_utility(a, d, e, np.zeros(n))))
    if u_max <= 0:
        return UserDual(np.zeros(n), 0.0, True)

    def _excess(u: float) -> float:
        return float(np.mean(solve_ratio_sum(a, d, e, u))) - p_bar

    lo = 0.5 * u_max
    while _excess(lo) < 0:
        lo *= 0.5
    if _excess(lo) == 0:
        u = lo
    else:
        u = brentq(_excess, lo, u_max, xtol=max(lo * 1e-16, 1e-300), rtol=1e-15, maxiter=cfg.max_iters)
    return UserDual(solve_ratio_sum(a, d, e, u), u / LN2, False)


def stationarity_residual(a: np.ndarray, d: np.ndarray, e: np.ndarray, powers: np.ndarray, nu: float) -> float:
    """Largest KKT violation of one user: equality where P > 0, upper bound where P = 0."""
    if not np.isfinite(nu):
        return 0.0
    a = np.where(np.atleast_2d(e) > 0, np.atleast_2d(a), 0.0)
    gap = (marginal_utility(a, np.atleast_2d(d), np.atleast_2d(e), powers) - nu * LN2) / LN2
    violation = np.where(powers > 0, np.abs(gap), np.maximum(gap, 0.0))
    return float(np.max(violation)) if violation.size else 0.0


def power_residuals(powers: np.ndarray, p_bars: Sequence[float], nu: Sequence[float]) -> np.ndarray:
    """Relative slack |mean P_k - p_bar_k| / max(1, p_bar_k) for users with nu_k > 0, else overdraw only."""
    p_bars = np.asarray(p_bars, dtype=np.float64)
    means = powers.mean(axis=0)
    nu = np.asarray(nu, dtype=np.float64)
    slack = np.where(nu > 0, np.abs(means - p_bars), np.maximum(means - p_bars, 0.0))
    return slack / np.maximum(1.0, p_bars)
