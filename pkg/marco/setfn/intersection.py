# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from collections import namedtuple
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from marco.utils.exception.setfn_exception import DimensionMismatchError, NonPositiveWeightError, UserCountError

from .case_label import BoundFamily, classify_split_sums
from .set_function import SetFunction, full_mask

INTERSECTION_TOL = 1e-9
MAX_LP_USERS = 4

IntersectionVerdict = namedtuple(
    "IntersectionVerdict",
    ["max_sum", "argmin_subset", "label", "active_sum_sides", "degenerate", "split_sums"]
)
WeightedOptimum = namedtuple("WeightedOptimum", ["rates", "value"])


def _check_same_k(f1: SetFunction, f2: SetFunction):
    if f1.k != f2.k:
        raise DimensionMismatchError(f"Set functions over K={f1.k} and K={f2.k} cannot be intersected.")


def split_sums(f1: SetFunction, f2: SetFunction) -> np.ndarray:
    """g_T = f1(T) + f2(K\\T) for every bitmask T, including the empty set and K."""
    _check_same_k(f1, f2)
    masks = np.arange(full_mask(f1.k) + 1)
    return f1.table[masks] + f2.table[full_mask(f1.k) ^ masks]


def intersect_max_sum(
    f1: SetFunction, f2: SetFunction, tol: float = INTERSECTION_TOL, family: BoundFamily = BoundFamily.DF
) -> IntersectionVerdict:
    """Largest sum rate in the intersection of the polymatroids of f1 and f2.

    The value is min over S of f1(S) + f2(K\\S). S = K gives f1(K) and S = {} gives
    f2(K); ``argmin_subset`` follows the smallest-cardinality then lexicographic
    tie-break.

    Args:
        f1 (SetFunction): Relay-side bound.
        f2 (SetFunction): Destination-side bound.
        tol (float): Relative band used for the case label. Defaults to 1e-9.
        family (BoundFamily): Family stamped on the label.

    Returns:
        IntersectionVerdict: Max sum, argmin bitmask, case label, whether f1(K) and
            f2(K) reach the max sum, degenerate flag and the split sums.
    """
    g = split_sums(f1, f2)
    classified = classify_split_sums(g, f1.k, tol, family)
    return IntersectionVerdict(
        max_sum=float(np.min(g)),
        argmin_subset=classified.argmin_subset,
        label=classified.label,
        active_sum_sides=classified.active_sum_sides,
        degenerate=classified.degenerate,
        split_sums=g
    )


def max_weighted_sum_on_intersection(f1: SetFunction, f2: SetFunction, mu: Sequence[float]) -> WeightedOptimum:
    """Maximize sum mu_k R_k over {R >= 0 : R(S) <= min(f1(S), f2(S)) for all S}.

    The optimum is a vertex of the intersection polytope; the dual simplex returns
    one directly.
    """
    _check_same_k(f1, f2)
    k = f1.k
    if k > MAX_LP_USERS:
        raise UserCountError(f"Weighted intersection supports K <= {MAX_LP_USERS}, got {k}.")
    mu = np.asarray(mu, dtype=np.float64)
    if mu.shape != (k,):
        raise DimensionMismatchError(f"Expected {k} weights, got {mu.size}.")
    if np.any(mu <= 0):
        raise NonPositiveWeightError(f"Weights must be positive, got {mu.tolist()}.")

    masks = np.arange(1, full_mask(k) + 1)
    a_ub = ((masks[:, None] >> np.arange(k)[None, :]) & 1).astype(np.float64)
    b_ub = np.minimum(f1.table[masks], f2.table[masks])
    result = linprog(-mu, A_ub=a_ub, b_ub=b_ub, bounds=[(0, None)] * k, method="highs-ds")
    rates = np.clip(result.x, 0.0, None)
    return WeightedOptimum(tuple(float(r) for r in rates), float(mu @ rates))


def two_user_weighted_optimum(m1, m2, m12, mu: Sequence[float]):
    """Weighted-sum vertex of a two-user region {R1 <= m1, R2 <= m2, R1 + R2 <= m12}.

    The higher-weight user h is decoded last and gets m_h, the other gets
    min(m_l, m12 - m_h). Works elementwise on arrays.

    Returns:
        tuple: (R1, R2, mu1 R1 + mu2 R2).
    """
    mu1, mu2 = float(mu[0]), float(mu[1])
    if mu1 <= 0 or mu2 <= 0:
        raise NonPositiveWeightError(f"Weights must be positive, got {(mu1, mu2)}.")
    m1, m2, m12 = np.asarray(m1, dtype=np.float64), np.asarray(m2, dtype=np.float64), np.asarray(m12, np.float64)
    if mu2 >= mu1:
        r2 = m2
        r1 = np.maximum(np.minimum(m1, m12 - m2), 0.0)
    else:
        r1 = m1
        r2 = np.maximum(np.minimum(m2, m12 - m1), 0.0)
    return r1, r2, mu1 * r1 + mu2 * r2
