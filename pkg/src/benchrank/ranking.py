"""Bi-objective lexicographic ranking of algorithms per benchmark.

Within a benchmark the algorithms are ordered by objective value first and
running time second; algorithms without a feasible result come last and
tie among themselves. Tied groups share the average of the positions they
occupy (midrank), so every row of the rank matrix sums to ``n(n+1)/2``.
"""

from __future__ import annotations

import io
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .dataset import BenchmarkDataset, DatasetError, Direction, write_matrix


def midranks(keys: Sequence) -> np.ndarray:
    """Fractional ranks of ``keys`` (1-based, ties get the mean position).

    ``keys`` may hold any mutually comparable objects, e.g. tuples.
    """
    n = len(keys)
    order = sorted(range(n), key=lambda i: keys[i])
    ranks = np.empty(n)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and keys[order[stop]] == keys[order[start]]:
            stop += 1
        # positions start+1 .. stop share their mean
        ranks[order[start:stop]] = (start + 1 + stop) / 2.0
        start = stop
    return ranks


def quantize(times, quantum: float) -> np.ndarray:
    """Round times to the nearest multiple of ``quantum``; NaN stays NaN."""
    if not quantum > 0:
        raise ValueError("time quantum must be positive")
    t = np.asarray(times, dtype=float)
    return np.round(t / quantum) * quantum


def rank_row(values, times, direction=Direction.MINIMIZE) -> np.ndarray:
    """Rank one benchmark's algorithms.

    Parameters
    ----------
    values : sequence of float or None
        Objective values; ``None`` or NaN marks a missing result.
    times : sequence of float or None
        Running times, required wherever a value is present.
    direction : Direction or {'min', 'max'}
        Optimization sense of ``values``.

    Returns
    -------
    ndarray
        Fractional ranks, 1 is best.

    Examples
    --------
    >>> rank_row([4, 4, 9], [10, 2, 5]).tolist()
    [2.0, 1.0, 3.0]
    >>> rank_row([None, 6, None], [None, 3, None]).tolist()
    [2.5, 1.0, 2.5]
    """
    v = np.array([np.nan if x is None else x for x in values], dtype=float)
    t = np.array([np.nan if x is None else x for x in times], dtype=float)
    if v.shape != t.shape or v.ndim != 1:
        raise ValueError("values and times must be 1-D of equal length")
    if v.size < 2:
        raise ValueError("need at least two algorithms to rank")
    present = ~np.isnan(v)
    if np.any(present & np.isnan(t)):
        bad = int(np.nonzero(present & np.isnan(t))[0][0])
        raise DatasetError(f"column {bad}: present result with missing time")
    if Direction.parse(direction) is Direction.MAXIMIZE:
        v = -v

    # missing cells share one key that sorts after every present cell
    keys = [(0, v[j], t[j]) if present[j] else (1, 0.0, 0.0) for j in range(v.size)]
    return midranks(keys)


@dataclass(frozen=True, eq=False)
class RankMatrix:
    """``m x n`` fractional ranks with the dataset's labels."""

    ranks: np.ndarray
    algorithm_names: tuple[str, ...]
    benchmark_names: tuple[str, ...]

    def __post_init__(self):
        r = np.array(self.ranks, dtype=float)
        r.setflags(write=False)
        object.__setattr__(self, "ranks", r)
        object.__setattr__(self, "algorithm_names", tuple(self.algorithm_names))
        object.__setattr__(self, "benchmark_names", tuple(self.benchmark_names))

    @property
    def m(self) -> int:
        return self.ranks.shape[0]

    @property
    def n(self) -> int:
        return self.ranks.shape[1]

    def to_csv(self) -> str:
        buf = io.StringIO()
        write_matrix(buf, self.algorithm_names, self.benchmark_names, self.ranks)
        return buf.getvalue()


def build_rank_matrix(dataset: BenchmarkDataset,
                      time_quantum: Optional[float] = None) -> RankMatrix:
    """Apply :func:`rank_row` to every benchmark of ``dataset``."""
    times = dataset.times if time_quantum is None else quantize(dataset.times, time_quantum)
    rows = []
    for name, values, row_times in zip(dataset.benchmark_names, dataset.results, times):
        try:
            rows.append(rank_row(values, row_times, dataset.direction))
        except (DatasetError, ValueError) as exc:
            raise DatasetError(f"benchmark {name!r}: {exc}") from exc
    return RankMatrix(np.vstack(rows), dataset.algorithm_names, dataset.benchmark_names)


@dataclass(frozen=True)
class RankSummary:
    algorithm_names: tuple[str, ...]
    m: int
    rank_sums: tuple[float, ...]
    mean_ranks: tuple[float, ...]
    # per algorithm: rank value -> count, keys in ascending order
    histogram: dict[str, dict[float, int]]


def summarize(A: RankMatrix) -> RankSummary:
    ranks = A.ranks
    sums = ranks.sum(axis=0)
    hist = {}
    for j, name in enumerate(A.algorithm_names):
        counts = Counter(float(x) for x in ranks[:, j])
        hist[name] = {k: counts[k] for k in sorted(counts)}
    return RankSummary(
        algorithm_names=A.algorithm_names,
        m=A.m,
        rank_sums=tuple(float(s) for s in sums),
        mean_ranks=tuple(float(s) / A.m for s in sums),
        histogram=hist,
    )


def tie_groups(A: RankMatrix) -> list[list[int]]:
    """Sizes of tied groups (size > 1) in each row of ``A``."""
    groups = []
    for row in A.ranks:
        counts = Counter(row.tolist())
        groups.append([c for c in counts.values() if c > 1])
    return groups
