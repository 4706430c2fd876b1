# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import math

import numpy as np

LN2 = math.log(2.0)


def capacity(x) -> np.ndarray:
    """C(x) = log2(1 + x), through log1p for small x."""
    return np.log1p(x) / LN2


def mask_columns(mask: int, k: int) -> np.ndarray:
    """Zero-based column indices of the users in a bitmask."""
    return np.array([i for i in range(k) if mask >> i & 1], dtype=np.int64)


def received_power(power_gains: np.ndarray, powers: np.ndarray, mask: int) -> np.ndarray:
    """Per-sample sum over users in mask of |h_k|^2 P_k."""
    columns = mask_columns(mask, power_gains.shape[1])
    if columns.size == 0:
        return np.zeros(power_gains.shape[0])
    return np.einsum("ij,ij->i", power_gains[:, columns], powers[:, columns])


def siso_rate_samples(power_gains: np.ndarray, powers: np.ndarray, mask: int, fraction: float) -> np.ndarray:
    """fraction * C(sum_{k in S} |h_k|^2 P_k / fraction) per sample."""
    return fraction * capacity(received_power(power_gains, powers, mask) / fraction)


def simo_statistics(hr: np.ndarray, hd: np.ndarray, powers: np.ndarray, mask: int, fraction: float):
    """Entries a, d, b of sum_{k in S} g_k g_k^H P_k / fraction with g_k = (H_{r,k}, H_{d,k})."""
    columns = mask_columns(mask, hr.shape[1])
    n = hr.shape[0]
    if columns.size == 0:
        return np.zeros(n), np.zeros(n), np.zeros(n, dtype=np.complex128)
    p = powers[:, columns] / fraction
    r, d = hr[:, columns], hd[:, columns]
    a = np.sum(p * (r.real ** 2 + r.imag ** 2), axis=1)
    dd = np.sum(p * (d.real ** 2 + d.imag ** 2), axis=1)
    b = np.sum(p * r * np.conj(d), axis=1)
    return a, dd, b


def simo_determinant(a: np.ndarray, d: np.ndarray, b: np.ndarray) -> np.ndarray:
    """det(I + [[a, b], [b*, d]]) = (1 + a)(1 + d) - |b|^2, never below 1."""
    return np.maximum((1.0 + a) * (1.0 + d) - (b.real ** 2 + b.imag ** 2), 1.0)


def simo_rate_samples(hr: np.ndarray, hd: np.ndarray, powers: np.ndarray, mask: int, fraction: float) -> np.ndarray:
    """fraction * log2 det(I + sum_{k in S} g_k g_k^H P_k / fraction) per sample."""
    a, d, b = simo_statistics(hr, hd, powers, mask, fraction)
    return fraction * np.log2(simo_determinant(a, d, b))


def simo_effective_gain(hr_k, hd_k, a, d, b) -> np.ndarray:
    """g^H M^{-1} g for M = I + [[a, b], [b*, d]] and g = (hr_k, hd_k)."""
    det = simo_determinant(a, d, b)
    cross = (b * np.conj(hr_k) * hd_k).real
    numerator = (hr_k.real ** 2 + hr_k.imag ** 2) * (1.0 + d) + (hd_k.real ** 2 + hd_k.imag ** 2) * (1.0 + a) \
        - 2.0 * cross
    return np.maximum(numerator, 0.0) / det
