"""Rank-based statistical comparison of algorithms on benchmark suites with infeasible runs."""

__version__ = "0.1.0"

from .dataset import (BenchmarkDataset, DatasetError, Direction, load_dataset,
                      parse_dataset, serialize_dataset, validate)
from .ranking import RankMatrix, RankSummary, build_rank_matrix, rank_row, summarize
from .scores import ScoreReport, ert, par10, score_dataset
from .stats import (DegenerateDataError, FriedmanResult, PosthocResult, ShapiroResult,
                    chi_square_sf, friedman_statistic, friedman_test, nemenyi,
                    shapiro_wilk, studentized_range_sf)

__all__ = [
    "BenchmarkDataset", "DatasetError", "Direction", "load_dataset", "parse_dataset",
    "serialize_dataset", "validate",
    "RankMatrix", "RankSummary", "build_rank_matrix", "rank_row", "summarize",
    "ScoreReport", "ert", "par10", "score_dataset",
    "DegenerateDataError", "FriedmanResult", "PosthocResult", "ShapiroResult",
    "chi_square_sf", "friedman_statistic", "friedman_test", "nemenyi",
    "shapiro_wilk", "studentized_range_sf",
]
