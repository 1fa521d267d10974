"""Shapiro-Wilk W test following Royston's AS R94 algorithm."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

# polynomial coefficients, constant term first
_C1 = (0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056)
_C2 = (0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633)
_C3 = (0.5440, -0.39978, 0.025054, -6.714e-4)
_C4 = (1.3822, -0.77857, 0.062767, -0.0020322)
_C5 = (-1.5861, -0.31082, -0.083751, 0.0038915)
_C6 = (-0.4803, -0.082676, 0.0030302)
_G = (-2.273, 0.459)


@dataclass(frozen=True)
class ShapiroResult:
    w_statistic: float
    p_value: float
    sample_size: int


def _poly(coefs, x: float) -> float:
    return float(np.polynomial.polynomial.polyval(x, coefs))


def shapiro_coefficients(n: int) -> np.ndarray:
    """Antisymmetric weights ``a`` for an ascending sample of size ``n``."""
    if n < 3:
        raise ValueError("Shapiro-Wilk needs at least 3 observations")
    a = np.zeros(n)
    if n == 3:
        a[0], a[-1] = -math.sqrt(0.5), math.sqrt(0.5)
        return a
    i = np.arange(1, n + 1)
    mvec = special.ndtri((i - 0.375) / (n + 0.25))
    ssq = float(np.dot(mvec, mvec))
    u = 1.0 / math.sqrt(n)
    an = _poly(_C1, u) + mvec[-1] / math.sqrt(ssq)
    if n > 5:
        an1 = _poly(_C2, u) + mvec[-2] / math.sqrt(ssq)
        eps = (ssq - 2 * mvec[-1] ** 2 - 2 * mvec[-2] ** 2) / (1 - 2 * an ** 2 - 2 * an1 ** 2)
        a[2:-2] = mvec[2:-2] / math.sqrt(eps)
        a[-2], a[1] = an1, -an1
    else:
        eps = (ssq - 2 * mvec[-1] ** 2) / (1 - 2 * an ** 2)
        a[1:-1] = mvec[1:-1] / math.sqrt(eps)
    a[-1], a[0] = an, -an
    return a


def _p_value(w: float, n: int) -> float:
    if n == 3:
        p = 6.0 / math.pi * (math.asin(math.sqrt(w)) - math.asin(math.sqrt(0.75)))
        return min(1.0, max(0.0, p))
    w1 = math.log1p(-w) if w < 1 else -math.inf
    if n <= 11:
        gamma = _poly(_G, n)
        if w1 >= gamma:
            return 1e-99
        y = -math.log(gamma - w1)
        mean, sd = _poly(_C3, n), math.exp(_poly(_C4, n))
    else:
        x = math.log(n)
        y = w1
        mean, sd = _poly(_C5, x), math.exp(_poly(_C6, x))
    if math.isinf(y):
        return 1.0
    return float(special.ndtr(-(y - mean) / sd))


def shapiro_wilk(sample) -> ShapiroResult:
    """Shapiro-Wilk normality test.

    Parameters
    ----------
    sample : array_like
        Between 3 and 5000 finite observations, not all equal.

    Returns
    -------
    ShapiroResult
        ``W`` and Royston's normal-approximation p-value.
    """
    x = np.sort(np.asarray(sample, dtype=float).ravel())
    n = x.size
    if not 3 <= n <= 5000:
        raise ValueError(f"sample size must lie in [3, 5000], got {n}")
    if not np.all(np.isfinite(x)):
        raise ValueError("sample contains non-finite values")
    centered = x - x.mean()
    ss = float(np.dot(centered, centered))
    if ss == 0.0 or x[-1] == x[0]:
        raise ValueError("zero variance: sample is constant")
    a = shapiro_coefficients(n)
    w = float(np.dot(a, centered)) ** 2 / ss
    w = min(w, 1.0)
    return ShapiroResult(w_statistic=w, p_value=_p_value(w, n), sample_size=n)
