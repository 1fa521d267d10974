from .distributions import chi_square_sf, studentized_range_sf
from .friedman import (
    DegenerateDataError,
    FriedmanResult,
    InconsistentRankSumsWarning,
    PosthocResult,
    friedman_statistic,
    friedman_test,
    nemenyi,
    tie_correction_factor,
)
from .shapiro import ShapiroResult, shapiro_coefficients, shapiro_wilk

__all__ = [
    "chi_square_sf", "studentized_range_sf",
    "DegenerateDataError", "FriedmanResult", "InconsistentRankSumsWarning",
    "PosthocResult", "friedman_statistic", "friedman_test", "nemenyi",
    "tie_correction_factor",
    "ShapiroResult", "shapiro_coefficients", "shapiro_wilk",
]
