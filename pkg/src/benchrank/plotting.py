"""Rank histogram figure."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .dataset import format_number  # noqa: E402
from .ranking import RankSummary  # noqa: E402

# fixed salt and no date stamp keep SVG output byte-identical across runs
_RC = {
    "svg.hashsalt": "benchrank",
    "svg.fonttype": "path",
    "font.size": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def plot_rank_histogram(summary: RankSummary, path, title: str = "Rank histogram") -> Path:
    """Grouped bars: one group per rank value, one bar per algorithm.

    The output format follows the file suffix (``.svg`` by default).
    """
    path = Path(path)
    if not path.suffix:
        path = path.with_suffix(".svg")
    buckets = sorted({k for h in summary.histogram.values() for k in h})
    names = summary.algorithm_names
    width = 0.8 / len(names)
    x = np.arange(len(buckets))

    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(max(4.0, 1.2 * len(buckets) + 2), 3.5))
        for j, name in enumerate(names):
            counts = [summary.histogram[name].get(b, 0) for b in buckets]
            offset = (j - (len(names) - 1) / 2) * width
            bars = ax.bar(x + offset, counts, width, label=name)
            ax.bar_label(bars, fontsize=8)
        ax.set_xticks(x, [format_number(b) for b in buckets])
        ax.set_xlabel("rank")
        ax.set_ylabel("benchmarks")
        ax.set_title(title)
        ax.legend(frameon=False)
        fig.tight_layout()
        metadata = {"Date": None} if path.suffix.lower() == ".svg" else None
        fig.savefig(path, metadata=metadata)
        plt.close(fig)
    return path
