"""Benchmark data model and CSV ingestion.

A dataset pairs an ``m x n`` matrix of objective values with a matrix of
running times of the same shape. Rows are benchmarks (trials), columns are
algorithms (treatments). A cell is missing when its objective value is
absent, i.e. the algorithm found no feasible solution in time.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, TextIO, Union

import numpy as np

MISSING_MARKERS = frozenset({"", "na", "nan", "inf", "+inf", "-inf"})


class DatasetError(ValueError):
    """Raised when input data violates the dataset contract.

    ``problems`` holds one message per violation, each carrying the
    offending (benchmark, algorithm) coordinate where one exists.
    """

    def __init__(self, problems: Union[str, list[str]]):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class Direction(enum.Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"

    @classmethod
    def parse(cls, value: Union[str, "Direction"]) -> "Direction":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"min": cls.MINIMIZE, "minimize": cls.MINIMIZE,
                   "max": cls.MAXIMIZE, "maximize": cls.MAXIMIZE}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown direction {value!r}; expected 'min' or 'max'") from None


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BenchmarkDataset:
    """Paired results/times matrices for ``m`` benchmarks and ``n`` algorithms.

    Missing entries are stored as NaN. ``times`` may hold a runtime for a
    missing cell (the time spent before giving up); it never affects
    missingness, which is derived from ``results`` alone.

    Construction validates the invariants and raises :class:`DatasetError`
    listing every violation. Instances are immutable.
    """

    algorithm_names: tuple[str, ...]
    benchmark_names: tuple[str, ...]
    results: np.ndarray
    times: np.ndarray
    direction: Direction = Direction.MINIMIZE
    cutoff: Optional[float] = None
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "algorithm_names", tuple(self.algorithm_names))
        object.__setattr__(self, "benchmark_names", tuple(self.benchmark_names))
        object.__setattr__(self, "results", _frozen(self.results))
        object.__setattr__(self, "times", _frozen(self.times))
        object.__setattr__(self, "direction", Direction.parse(self.direction))
        if self.cutoff is not None:
            object.__setattr__(self, "cutoff", float(self.cutoff))
        object.__setattr__(self, "warnings", tuple(validate(self)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.results.shape

    @property
    def m(self) -> int:
        return self.results.shape[0]

    @property
    def n(self) -> int:
        return self.results.shape[1]

    @property
    def missing(self) -> np.ndarray:
        """Boolean mask of cells without a feasible result."""
        return np.isnan(self.results)

    def missing_counts(self) -> dict[str, int]:
        counts = self.missing.sum(axis=0)
        return {name: int(c) for name, c in zip(self.algorithm_names, counts)}

    def __eq__(self, other):
        if not isinstance(other, BenchmarkDataset):
            return NotImplemented
        return (
            self.algorithm_names == other.algorithm_names
            and self.benchmark_names == other.benchmark_names
            and self.direction == other.direction
            and self.cutoff == other.cutoff
            and np.array_equal(self.results, other.results, equal_nan=True)
            and np.array_equal(self.times, other.times, equal_nan=True)
        )


def validate(dataset: BenchmarkDataset) -> list[str]:
    """Check every dataset invariant.

    Returns a list of warnings (currently only fully missing rows, which
    are valid). Raises :class:`DatasetError` with all violations otherwise.
    """
    errors: list[str] = []
    algos, benches = dataset.algorithm_names, dataset.benchmark_names
    results, times = np.asarray(dataset.results), np.asarray(dataset.times)

    if results.ndim != 2 or times.ndim != 2:
        raise DatasetError("results and times must be 2-D matrices")
    if results.shape != times.shape:
        raise DatasetError(
            f"dimension mismatch: results {results.shape} vs times {times.shape}")
    m, n = results.shape
    if m < 1:
        errors.append("dataset needs at least one benchmark")
    if n < 2:
        errors.append(f"dataset needs at least two algorithms, got {n}")
    if len(algos) != n:
        errors.append(f"{len(algos)} algorithm names for {n} columns")
    if len(benches) != m:
        errors.append(f"{len(benches)} benchmark names for {m} rows")
    errors += _name_problems(algos, "algorithm")
    errors += _name_problems(benches, "benchmark")
    if dataset.cutoff is not None and not (math.isfinite(dataset.cutoff) and dataset.cutoff > 0):
        errors.append(f"cutoff must be a positive finite number, got {dataset.cutoff}")
    if errors:
        raise DatasetError(errors)

    for i, j in zip(*np.nonzero(np.isinf(results))):
        errors.append(f"({benches[i]}, {algos[j]}): result is not finite")
    present = ~np.isnan(results)
    for i, j in zip(*np.nonzero(present & ~np.isfinite(times))):
        errors.append(f"({benches[i]}, {algos[j]}): present result with missing time")
    with np.errstate(invalid="ignore"):
        negative = times < 0
    for i, j in zip(*np.nonzero(negative)):
        errors.append(f"({benches[i]}, {algos[j]}): negative time {times[i, j]!r}")
    if errors:
        raise DatasetError(errors)

    warnings = []
    for i in np.nonzero(~present.any(axis=1))[0]:
        warnings.append(f"benchmark {benches[i]!r}: every algorithm is missing")
    return warnings


def _name_problems(names: Iterable[str], kind: str) -> list[str]:
    problems, seen = [], set()
    for name in names:
        if not isinstance(name, str) or not name.strip():
            problems.append(f"empty {kind} name")
        elif name in seen:
            problems.append(f"duplicate {kind} name {name!r}")
        seen.add(name)
    return problems


def _is_missing_token(token: str) -> bool:
    return token.strip().lower() in MISSING_MARKERS


def _read_table(source: TextIO, label: str):
    rows = [row for row in csv.reader(source) if row and any(c.strip() for c in row)]
    if not rows:
        raise DatasetError(f"{label}: empty file")
    header = [c.strip() for c in rows[0]]
    if len(header) < 2:
        raise DatasetError(f"{label}: header needs a benchmark column and algorithm columns")
    width = len(header)
    for k, row in enumerate(rows[1:], start=2):
        if len(row) != width:
            raise DatasetError(
                f"{label} line {k}: expected {width} fields, got {len(row)}")
    return header[1:], [r[0].strip() for r in rows[1:]], [r[1:] for r in rows[1:]]


def _number(token: str, where: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise DatasetError(f"{where}: non-numeric value {token.strip()!r}") from None


def parse_dataset(results_source: TextIO, times_source: TextIO,
                  direction: Union[str, Direction] = Direction.MINIMIZE,
                  cutoff: Optional[float] = None) -> BenchmarkDataset:
    """Read a dataset from two CSV streams with identical layout.

    Both streams start with a header ``benchmark,<algo1>,...,<algoN>``
    followed by one row per benchmark. Empty cells and the tokens ``NA``,
    ``nan`` and ``inf`` (any case) mark a missing result. A time paired
    with a missing result is kept only if it parses as a number.
    """
    r_algos, r_benches, r_cells = _read_table(results_source, "results")
    t_algos, t_benches, t_cells = _read_table(times_source, "times")

    if (len(r_benches), len(r_algos)) != (len(t_benches), len(t_algos)):
        raise DatasetError(
            f"dimension mismatch: results {len(r_benches)}x{len(r_algos)} "
            f"vs times {len(t_benches)}x{len(t_algos)}")
    if r_algos != t_algos:
        raise DatasetError(f"header mismatch: results {r_algos} vs times {t_algos}")
    if r_benches != t_benches:
        bad = next(k for k, (a, b) in enumerate(zip(r_benches, t_benches)) if a != b)
        raise DatasetError(
            f"row label mismatch at row {bad + 1}: {r_benches[bad]!r} vs {t_benches[bad]!r}")

    m, n = len(r_benches), len(r_algos)
    results = np.full((m, n), np.nan)
    times = np.full((m, n), np.nan)
    errors = []
    for i in range(m):
        for j in range(n):
            where = f"({r_benches[i]}, {r_algos[j]})"
            rtok, ttok = r_cells[i][j], t_cells[i][j]
            if _is_missing_token(rtok):
                if not _is_missing_token(ttok):
                    try:
                        times[i, j] = float(ttok)
                    except ValueError:
                        pass
                continue
            try:
                results[i, j] = _number(rtok, f"results {where}")
                if _is_missing_token(ttok):
                    raise DatasetError(f"{where}: present result with missing time")
                times[i, j] = _number(ttok, f"times {where}")
            except DatasetError as exc:
                errors.extend(exc.problems)
    if errors:
        raise DatasetError(errors)

    return BenchmarkDataset(r_algos, r_benches, results, times,
                            direction=direction, cutoff=cutoff)


def load_dataset(results_path, times_path, direction=Direction.MINIMIZE,
                 cutoff=None) -> BenchmarkDataset:
    # utf-8-sig tolerates a BOM; newline="" lets csv handle CRLF
    with open(results_path, encoding="utf-8-sig", newline="") as rf, \
            open(times_path, encoding="utf-8-sig", newline="") as tf:
        return parse_dataset(rf, tf, direction=direction, cutoff=cutoff)


def format_number(x: float) -> str:
    if math.isnan(x):
        return "NA"
    if float(x).is_integer() and abs(x) < 1e16:
        return str(int(x)) if x != 0 else "0"
    return repr(float(x))


def write_matrix(stream: TextIO, algorithm_names, benchmark_names, values) -> None:
    """Write a labelled matrix in the benchmark CSV layout."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["benchmark", *algorithm_names])
    for name, row in zip(benchmark_names, np.asarray(values)):
        writer.writerow([name, *(format_number(v) for v in row)])


def serialize_dataset(dataset: BenchmarkDataset) -> tuple[str, str]:
    """Return ``(results_csv, times_csv)`` text that parses back to ``dataset``."""
    out = []
    for matrix in (dataset.results, dataset.times):
        buf = io.StringIO()
        write_matrix(buf, dataset.algorithm_names, dataset.benchmark_names, matrix)
        out.append(buf.getvalue())
    return out[0], out[1]
