"""Penalized average runtime (PAR10) and expected runtime (ERT) scores."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .dataset import BenchmarkDataset


def _as_optional_array(values) -> np.ndarray:
    return np.array([np.nan if v is None else v for v in values], dtype=float)


def par10(times: Sequence[Optional[float]], cutoff: float, penalty: float = 10.0) -> float:
    """Mean runtime over all instances, charging ``penalty * cutoff`` per unsolved one.

    ``None``/NaN entries are unsolved. Solved times above the cutoff are
    clamped to it with a warning.
    """
    t = _as_optional_array(times)
    if t.size == 0:
        raise ValueError("par10 needs at least one instance")
    if not cutoff > 0:
        raise ValueError("cutoff must be positive")
    solved = ~np.isnan(t)
    over = solved & (t > cutoff)
    if over.any():
        warnings.warn(f"{int(over.sum())} solved time(s) exceed the cutoff {cutoff:g}; "
                      "clamped", RuntimeWarning, stacklevel=2)
    total = float(np.minimum(t[solved], cutoff).sum()) + penalty * cutoff * int((~solved).sum())
    return total / t.size


def ert(times: Sequence[float], success: Sequence[bool]) -> Optional[float]:
    """Expected runtime to the first success.

    ``RT_S + (1 - p_S) / p_S * RT_US`` where ``RT_S`` and ``RT_US`` are the
    mean costs of successful and unsuccessful trials and ``p_S`` is the
    fraction of successful trials. Returns ``None`` when nothing succeeded.
    Units follow the input (seconds or evaluation counts).
    """
    t = np.asarray(times, dtype=float)
    ok = np.asarray(success, dtype=bool)
    if t.shape != ok.shape or t.ndim != 1:
        raise ValueError("times and success must be 1-D of equal length")
    if t.size == 0:
        raise ValueError("ert needs at least one trial")
    if np.isnan(t).any():
        raise ValueError("ert needs a cost for every trial")
    n_ok = int(ok.sum())
    if n_ok == 0:
        return None
    rt_s = float(t[ok].mean())
    rt_us = float(t[~ok].mean()) if n_ok < t.size else 0.0
    # (1 - p_S) / p_S with p_S = n_ok / m, as an exact ratio of counts
    odds = (t.size - n_ok) / n_ok
    return rt_s + odds * rt_us


@dataclass
class ScoreReport:
    algorithm_names: tuple[str, ...]
    solved_counts: dict[str, int]
    par10: dict[str, Optional[float]]
    ert: dict[str, Optional[float]]
    # reason strings for every null entry
    notes: dict[str, str] = field(default_factory=dict)


def score_dataset(dataset: BenchmarkDataset) -> ScoreReport:
    """Per-algorithm PAR10 and ERT for a dataset.

    For ERT an unsolved benchmark costs its recorded time when one was
    given, otherwise the cutoff. Without a cutoff PAR10 is null, and so is
    ERT for any algorithm with an unsolved benchmark lacking a time.
    """
    names = dataset.algorithm_names
    solved = ~dataset.missing
    cutoff = dataset.cutoff
    report = ScoreReport(names, {}, {}, {})
    for j, name in enumerate(names):
        ok = solved[:, j]
        report.solved_counts[name] = int(ok.sum())
        col = np.where(ok, dataset.times[:, j], np.nan)

        if cutoff is None:
            report.par10[name] = None
            report.notes[f"par10.{name}"] = "no cutoff given"
        else:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                report.par10[name] = par10(col, cutoff)

        costs = dataset.times[:, j]
        if cutoff is not None:
            costs = np.where(np.isnan(costs), cutoff, costs)
        if np.isnan(costs).any():
            report.ert[name] = None
            report.notes[f"ert.{name}"] = "unsolved benchmark without time and no cutoff"
            continue
        value = ert(costs, ok)
        report.ert[name] = value
        if value is None:
            report.notes[f"ert.{name}"] = "no successful run"
    return report

