"""Command-line entry point: ``benchrank rank|analyze|hist|scores``.

Exit codes: 0 success, 2 I/O error, 3 format or validation error,
4 statistically degenerate data. Statistical significance never changes
the exit code.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from . import __version__
from .dataset import DatasetError, load_dataset
from .ranking import build_rank_matrix, summarize
from .report import (AnalysisConfig, analyze, dumps_json, histogram_table,
                     render_csv, render_scores, render_text, use_color)
from .scores import score_dataset

EXIT_OK, EXIT_IO, EXIT_FORMAT, EXIT_DEGENERATE = 0, 2, 3, 4

log = logging.getLogger("benchrank")


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _alpha(text: str) -> float:
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--results", required=True, help="CSV of objective values")
    common.add_argument("--times", required=True, help="CSV of running times")
    common.add_argument("--direction", choices=("min", "max"), default="min")
    common.add_argument("--alpha", type=_alpha, default=0.05)
    common.add_argument("--no-tie-correction", dest="tie_correction", action="store_false")
    common.add_argument("--cutoff", type=_positive, default=None,
                        help="time limit in seconds (needed for PAR10)")
    common.add_argument("--time-quantum", type=_positive, default=None,
                        help="round times to this resolution before ranking")
    common.add_argument("--format", dest="output_format", choices=("json", "text", "csv"),
                        default=None)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="benchrank",
        description="Compare algorithms on benchmarks with infeasible runs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("rank", parents=[common], help="write the rank matrix as CSV")
    sub.add_parser("analyze", parents=[common],
                   help="Shapiro-Wilk, Friedman and Nemenyi tests plus scores")
    sub.add_parser("hist", parents=[common],
                   help="rank histogram figure (--out, default ranks.svg) and count CSV")
    sub.add_parser("scores", parents=[common], help="PAR10 and ERT per algorithm")
    return parser


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _run(args) -> int:
    default_format = {"rank": "csv", "analyze": "json", "hist": "csv", "scores": "json"}
    config = AnalysisConfig(
        direction=args.direction, alpha=args.alpha, tie_correction=args.tie_correction,
        cutoff=args.cutoff, time_quantum=args.time_quantum,
        output_format=args.output_format or default_format[args.command])
    dataset = load_dataset(args.results, args.times, config.direction, config.cutoff)
    for w in dataset.warnings:
        log.warning(w)

    if args.command == "rank":
        _emit(build_rank_matrix(dataset, config.time_quantum).to_csv(), args.out)
        return EXIT_OK

    if args.command == "scores":
        _emit(render_scores(score_dataset(dataset), config.output_format), args.out)
        return EXIT_OK

    if args.command == "hist":
        from .plotting import plot_rank_histogram

        summary = summarize(build_rank_matrix(dataset, config.time_quantum))
        figure = plot_rank_histogram(summary, args.out or "ranks.svg")
        table = figure.with_suffix(".csv")
        with open(table, "w", encoding="utf-8", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(histogram_table(summary))
        log.info("wrote %s and %s", figure, table)
        return EXIT_OK

    report = analyze(dataset, config)
    if config.output_format == "json":
        text = dumps_json(report.to_dict())
    elif config.output_format == "csv":
        text = render_csv(report)
    else:
        text = render_text(report, color=args.out is None and use_color(sys.stdout))
    _emit(text, args.out)
    if report.degenerate:
        log.error(report.notes["friedman"])
        return EXIT_DEGENERATE
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="benchrank: %(levelname)s: %(message)s")
    try:
        return _run(args)
    except FileNotFoundError as exc:
        log.error("cannot read %s: %s", exc.filename, exc.strerror)
        return EXIT_IO
    except OSError as exc:
        log.error("I/O error on %s: %s", exc.filename, exc.strerror or exc)
        return EXIT_IO
    except UnicodeDecodeError as exc:
        log.error("input is not UTF-8: %s", exc)
        return EXIT_FORMAT
    except DatasetError as exc:
        for problem in exc.problems:
            log.error(problem)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
