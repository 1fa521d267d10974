"""Friedman omnibus test and Nemenyi all-pairs post-hoc test on rank data."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..ranking import RankMatrix, summarize, tie_groups
from .distributions import chi_square_sf, studentized_range_sf


class DegenerateDataError(ValueError):
    """The data carry no information for the requested test."""


class InconsistentRankSumsWarning(UserWarning):
    """Rank sums do not add up to m*n*(n+1)/2."""


@dataclass(frozen=True)
class FriedmanResult:
    statistic: float
    degrees_of_freedom: int
    p_value: float
    tie_corrected: bool
    reject_null: bool
    alpha: float
    uncorrected_statistic: float
    tie_factor: float


@dataclass(frozen=True)
class PosthocResult:
    algorithm_names: tuple[str, ...]
    statistics: np.ndarray
    p_values: np.ndarray
    alpha: float
    significant: np.ndarray

    def pairs(self):
        """Yield ``(name_i, name_j, q, p, significant)`` for i < j."""
        names = self.algorithm_names
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                yield (names[i], names[j], float(self.statistics[i, j]),
                       float(self.p_values[i, j]), bool(self.significant[i, j]))


def _check_alpha(alpha: float) -> None:
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")


def _check_rank_sums(rank_sums: Sequence[float], m: int, n: Optional[int] = None,
                     strict: bool = False) -> np.ndarray:
    s = np.asarray(rank_sums, dtype=float)
    if n is None:
        n = s.size
    if s.ndim != 1 or s.size != n:
        raise ValueError(f"expected {n} rank sums, got shape {s.shape}")
    if n < 2:
        raise ValueError("need at least two treatments")
    if m < 1:
        raise ValueError("m must be a positive integer")
    expected = m * n * (n + 1) / 2.0
    if not math.isclose(s.sum(), expected, rel_tol=1e-9):
        msg = (f"rank sums total {s.sum():g} but {m} rows of {n} ranks "
               f"must total {expected:g}")
        if strict:
            raise ValueError(msg)
        warnings.warn(msg, InconsistentRankSumsWarning, stacklevel=3)
    return s


def friedman_statistic(rank_sums: Sequence[float], m: int, n: Optional[int] = None,
                       strict: bool = False) -> float:
    """Uncorrected Friedman statistic from column rank sums.

    ``12 / (m n (n+1)) * sum(s_j**2) - 3 m (n+1)``.

    Rank sums whose total differs from ``m n (n+1) / 2`` cannot come from
    an ``m x n`` rank matrix; this raises with ``strict=True`` and warns
    otherwise.
    """
    s = _check_rank_sums(rank_sums, m, n, strict)
    n = s.size
    fm = 12.0 / (m * n * (n + 1)) * float(np.dot(s, s)) - 3.0 * m * (n + 1)
    # rounding can push an exact zero slightly negative
    return max(fm, 0.0)


def tie_correction_factor(A: RankMatrix) -> float:
    """``1 - sum(t**3 - t) / (m (n**3 - n))`` over all tied groups of all rows."""
    m, n = A.ranks.shape
    ties = sum(t ** 3 - t for row in tie_groups(A) for t in row)
    return 1.0 - ties / (m * (n ** 3 - n))


def friedman_test(A: RankMatrix, alpha: float = 0.05,
                  tie_correction: bool = True) -> FriedmanResult:
    """Friedman rank sum test on a rank matrix.

    The statistic is referred to a chi-square law with ``n - 1`` degrees of
    freedom. With ``tie_correction`` the uncorrected statistic is divided
    by :func:`tie_correction_factor`.

    Raises
    ------
    DegenerateDataError
        If every row is fully tied, so no row discriminates.
    """
    _check_alpha(alpha)
    summary = summarize(A)
    m, n = A.ranks.shape
    factor = tie_correction_factor(A)
    if factor <= 1e-12:
        raise DegenerateDataError("degenerate: no discrimination in any row")
    raw = friedman_statistic(summary.rank_sums, m, n, strict=True)
    stat = raw / factor if tie_correction else raw
    p = chi_square_sf(stat, n - 1)
    return FriedmanResult(
        statistic=stat, degrees_of_freedom=n - 1, p_value=p,
        tie_corrected=tie_correction, reject_null=p < alpha, alpha=alpha,
        uncorrected_statistic=raw, tie_factor=factor,
    )


def nemenyi(rank_sums: Sequence[float], m: int, alpha: float = 0.05,
            algorithm_names: Optional[Sequence[str]] = None,
            strict: bool = False) -> PosthocResult:
    """Nemenyi all-pairs comparison of mean ranks.

    For each pair the statistic is ``|s_i - s_j| / (m sqrt(n (n+1) / (12 m)))``
    and its p-value is the upper tail of the studentized range for ``n``
    means with infinite degrees of freedom.
    """
    _check_alpha(alpha)
    s = _check_rank_sums(rank_sums, m, None, strict)
    n = s.size
    if algorithm_names is None:
        algorithm_names = [f"A{j + 1}" for j in range(n)]
    if len(algorithm_names) != n:
        raise ValueError("one name per rank sum required")

    scale = m * math.sqrt(n * (n + 1) / (12.0 * m))
    stats = np.abs(s[:, None] - s[None, :]) / scale
    pvals = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            pvals[i, j] = pvals[j, i] = studentized_range_sf(stats[i, j], n)
    for arr in (stats, pvals):
        arr.setflags(write=False)
    sig = pvals < alpha
    sig.setflags(write=False)
    return PosthocResult(tuple(algorithm_names), stats, pvals, alpha, sig)
