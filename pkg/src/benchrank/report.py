"""Analysis pipeline and report serialization.

The pipeline runs in a fixed order: rank the data, screen each rank
column with Shapiro-Wilk, run Friedman's test, and run the Nemenyi
post-hoc test only if Friedman rejects. PAR10/ERT scores are computed
alongside from the raw times.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import asdict, dataclass
from typing import Any, Optional

import numpy as np

from . import __version__
from .dataset import BenchmarkDataset, Direction, format_number
from .ranking import RankMatrix, RankSummary, build_rank_matrix, summarize
from .scores import ScoreReport, score_dataset
from .stats import (DegenerateDataError, FriedmanResult, PosthocResult,
                    ShapiroResult, friedman_test, nemenyi, shapiro_wilk)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AnalysisConfig:
    direction: Direction = Direction.MINIMIZE
    alpha: float = 0.05
    tie_correction: bool = True
    cutoff: Optional[float] = None
    time_quantum: Optional[float] = None
    output_format: str = "json"

    def __post_init__(self):
        object.__setattr__(self, "direction", Direction.parse(self.direction))
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.time_quantum is not None and not self.time_quantum > 0:
            raise ValueError("time quantum must be positive")
        if self.cutoff is not None and not self.cutoff > 0:
            raise ValueError("cutoff must be positive")
        if self.output_format not in ("json", "text", "csv"):
            raise ValueError(f"unknown output format {self.output_format!r}")

    def echo(self) -> dict:
        d = asdict(self)
        d["direction"] = self.direction.value
        return d


@dataclass
class AnalysisReport:
    config: AnalysisConfig
    dataset: BenchmarkDataset
    ranks: RankMatrix
    summary: RankSummary
    shapiro: dict[str, Optional[ShapiroResult]]
    friedman: Optional[FriedmanResult]
    posthoc: Optional[PosthocResult]
    scores: ScoreReport
    # reason strings for every null field, keyed by dotted path
    notes: dict[str, str]

    @property
    def degenerate(self) -> bool:
        return self.friedman is None and "friedman" in self.notes

    def to_dict(self) -> dict:
        ds = self.dataset
        shapiro = {}
        for name, res in self.shapiro.items():
            shapiro[name] = None if res is None else {
                "w_statistic": res.w_statistic, "p_value": res.p_value,
                "sample_size": res.sample_size}
        friedman = None
        if self.friedman is not None:
            friedman = asdict(self.friedman)
        posthoc = None
        if self.posthoc is not None:
            ph = self.posthoc
            posthoc = {
                "alpha": ph.alpha,
                "algorithms": list(ph.algorithm_names),
                "statistics": ph.statistics.tolist(),
                "p_values": ph.p_values.tolist(),
                "significant": ph.significant.tolist(),
                "pairs": [{"a": a, "b": b, "statistic": q, "p_value": p, "significant": s}
                          for a, b, q, p, s in ph.pairs()],
            }
        sc = self.scores
        return {
            "schema": SCHEMA_VERSION,
            "tool": {"name": "benchrank", "version": __version__},
            "config": self.config.echo(),
            "dataset": {
                "m": ds.m, "n": ds.n,
                "algorithms": list(ds.algorithm_names),
                "missing_counts": ds.missing_counts(),
                "warnings": list(ds.warnings),
            },
            "ranks": {
                "rank_sums": dict(zip(self.summary.algorithm_names, self.summary.rank_sums)),
                "mean_ranks": dict(zip(self.summary.algorithm_names, self.summary.mean_ranks)),
                "histogram": {name: {format_number(k): v for k, v in h.items()}
                              for name, h in self.summary.histogram.items()},
            },
            "shapiro": shapiro,
            "friedman": friedman,
            "posthoc": posthoc,
            "scores": {
                "solved_counts": sc.solved_counts,
                "par10": sc.par10,
                "ert": sc.ert,
            },
            "notes": dict(sorted({**self.notes,
                                  **{f"scores.{k}": v for k, v in sc.notes.items()}}.items())),
        }


def analyze(dataset: BenchmarkDataset, config: AnalysisConfig = AnalysisConfig()) -> AnalysisReport:
    """Run the full pipeline. Degenerate Friedman input is recorded, not raised."""
    ranks = build_rank_matrix(dataset, config.time_quantum)
    summary = summarize(ranks)
    notes: dict[str, str] = {}

    shapiro: dict[str, Optional[ShapiroResult]] = {}
    for j, name in enumerate(ranks.algorithm_names):
        try:
            shapiro[name] = shapiro_wilk(ranks.ranks[:, j])
        except ValueError as exc:
            shapiro[name] = None
            notes[f"shapiro.{name}"] = str(exc)

    friedman = posthoc = None
    try:
        friedman = friedman_test(ranks, config.alpha, config.tie_correction)
    except DegenerateDataError as exc:
        notes["friedman"] = str(exc)
    if friedman is not None and friedman.reject_null:
        posthoc = nemenyi(summary.rank_sums, ranks.m, config.alpha,
                          algorithm_names=ranks.algorithm_names, strict=True)
    elif friedman is not None:
        notes["posthoc"] = (f"Friedman p = {friedman.p_value:.4g} >= alpha = {config.alpha:g}; "
                            "post-hoc not run")
    else:
        notes["posthoc"] = "skipped: Friedman test not available"

    scores = score_dataset(dataset)
    return AnalysisReport(config, dataset, ranks, summary, shapiro,
                          friedman, posthoc, scores, notes)


# -- serialization ---------------------------------------------------------

def _json_value(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        text = f"{x:.17g}"
        # keep floats recognizable as floats
        if all(c not in text for c in ".e"):
            text += ".0"
        return text
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_json_value(str(k), indent, level + 1)}: {_json_value(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _json_value(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj: Any, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _json_value(obj, indent, 0) + "\n"


def use_color(stream) -> bool:
    if os.environ.get("BENCHRANK_NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def render_text(report: AnalysisReport, color: bool = False) -> str:
    bold = (lambda s: f"\033[1m{s}\033[0m") if color else (lambda s: s)
    mark = (lambda s: f"\033[31m{s}\033[0m") if color else (lambda s: s)
    ds, summary = report.dataset, report.summary
    out = [bold(f"benchrank {__version__}: {ds.m} benchmarks x {ds.n} algorithms "
                f"({report.config.direction.value}imize)"), ""]
    for w in ds.warnings:
        out.append(f"warning: {w}")

    width = max(len("algorithm"), *(len(a) for a in ds.algorithm_names))
    out.append(bold("Ranks"))
    out.append(f"  {'algorithm':<{width}}  {'missing':>7}  {'rank sum':>9}  {'mean rank':>9}"
               f"  {'SW W':>7}  {'SW p':>10}")
    missing = ds.missing_counts()
    for j, name in enumerate(ds.algorithm_names):
        sw = report.shapiro[name]
        w = f"{sw.w_statistic:7.4f}" if sw else f"{'-':>7}"
        p = f"{sw.p_value:10.3g}" if sw else f"{'-':>10}"
        out.append(f"  {name:<{width}}  {missing[name]:>7d}  {summary.rank_sums[j]:>9g}"
                   f"  {summary.mean_ranks[j]:>9.4f}  {w}  {p}")
    out.append("")

    out.append(bold("Friedman test"))
    fr = report.friedman
    if fr is None:
        out.append(f"  {report.notes['friedman']}")
    else:
        label = "tie-corrected" if fr.tie_corrected else "uncorrected"
        verdict = "reject H0" if fr.reject_null else "do not reject H0"
        out.append(f"  chi-squared = {fr.statistic:.4f} ({label}), df = {fr.degrees_of_freedom}, "
                   f"p = {fr.p_value:.4g}: {verdict} at alpha = {fr.alpha:g}")
    out.append("")

    out.append(bold("Nemenyi post-hoc test"))
    if report.posthoc is None:
        out.append(f"  {report.notes['posthoc']}")
    else:
        for a, b, q, p, sig in report.posthoc.pairs():
            line = f"  {a} vs {b}: q = {q:.4f}, p = {p:.4g}"
            out.append(mark(line + "  *") if sig else line)
    out.append("")

    sc = report.scores
    out.append(bold("Scores"))
    for name in ds.algorithm_names:
        p10 = "-" if sc.par10[name] is None else f"{sc.par10[name]:.6g}"
        e = "-" if sc.ert[name] is None else f"{sc.ert[name]:.6g}"
        out.append(f"  {name:<{width}}  solved {sc.solved_counts[name]:>4d}/{ds.m}"
                   f"  PAR10 {p10:>10}  ERT {e:>10}")
    return "\n".join(out) + "\n"


def _csv_cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format_number(x)
    return str(x)


def render_csv(report: AnalysisReport) -> str:
    """Per-algorithm summary table."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["algorithm", "missing", "rank_sum", "mean_rank", "shapiro_w",
                     "shapiro_p", "solved", "par10", "ert"])
    missing = report.dataset.missing_counts()
    sc = report.scores
    for j, name in enumerate(report.dataset.algorithm_names):
        sw = report.shapiro[name]
        writer.writerow([name, missing[name], _csv_cell(report.summary.rank_sums[j]),
                         _csv_cell(report.summary.mean_ranks[j]),
                         _csv_cell(sw.w_statistic if sw else None),
                         _csv_cell(sw.p_value if sw else None),
                         sc.solved_counts[name], _csv_cell(sc.par10[name]),
                         _csv_cell(sc.ert[name])])
    return buf.getvalue()


def render_scores(scores: ScoreReport, fmt: str) -> str:
    if fmt == "json":
        return dumps_json({"schema": SCHEMA_VERSION, "solved_counts": scores.solved_counts,
                           "par10": scores.par10, "ert": scores.ert,
                           "notes": dict(sorted(scores.notes.items()))})
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["algorithm", "solved", "par10", "ert"])
        for name in scores.algorithm_names:
            writer.writerow([name, scores.solved_counts[name], _csv_cell(scores.par10[name]),
                             _csv_cell(scores.ert[name])])
        return buf.getvalue()
    lines = []
    for name in scores.algorithm_names:
        p10 = "-" if scores.par10[name] is None else f"{scores.par10[name]:.6g}"
        e = "-" if scores.ert[name] is None else f"{scores.ert[name]:.6g}"
        lines.append(f"{name}: solved {scores.solved_counts[name]}, PAR10 {p10}, ERT {e}")
    for key, why in sorted(scores.notes.items()):
        lines.append(f"  note {key}: {why}")
    return "\n".join(lines) + "\n"


def histogram_table(summary: RankSummary) -> list[list[str]]:
    """Rows ``rank, count_algo1, ...``; every rank value seen in any column."""
    buckets = sorted({k for h in summary.histogram.values() for k in h})
    rows = [["rank", *summary.algorithm_names]]
    for b in buckets:
        rows.append([format_number(b),
                     *(str(summary.histogram[a].get(b, 0)) for a in summary.algorithm_names)])
    return rows
