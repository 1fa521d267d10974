import csv
import json
import os
import subprocess
import sys

import pytest

from benchrank.cli import main


def run(*args, env=None):
    return subprocess.run([sys.executable, "-m", "benchrank", *map(str, args)],
                          capture_output=True, text=True,
                          env={**os.environ, **(env or {})})


def write_pair(tmp_path, results, times, name="d"):
    r = tmp_path / f"{name}_results.csv"
    t = tmp_path / f"{name}_times.csv"
    r.write_text(results)
    t.write_text(times)
    return r, t


@pytest.fixture
def tied_pair(tmp_path):
    return write_pair(tmp_path, "benchmark,a,b\nx,1,1\ny,2,2\nz,NA,NA\n",
                      "benchmark,a,b\nx,5,5\ny,1,1\nz,NA,NA\n", "tied")


@pytest.fixture
def dominant_pair(tmp_path):
    rows = "".join(f"p{i},{i},{i + 1},{i + 2}\n" for i in range(5))
    times = "".join(f"p{i},1,1,1\n" for i in range(5))
    return write_pair(tmp_path, "benchmark,best,mid,worst\n" + rows,
                      "benchmark,best,mid,worst\n" + times, "dom")


def test_rank(results_path, times_path):
    proc = run("rank", "--results", results_path, "--times", times_path)
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[0] == "benchmark,IR,FP,RECIPE"
    assert lines[3] == "ex3,2.5,2.5,1"
    assert lines[10] == "ex10,2,2,2"
    assert "every algorithm is missing" in proc.stderr
    assert run("rank", "--results", results_path, "--times", times_path).stdout == proc.stdout


def test_rank_to_file(results_path, times_path, tmp_path):
    out = tmp_path / "ranks.csv"
    assert main(["rank", "--results", str(results_path), "--times", str(times_path),
                 "--out", str(out)]) == 0
    assert out.read_text().startswith("benchmark,IR,FP,RECIPE\nex1,1,3,2\n")


def test_missing_file(times_path, tmp_path):
    missing = tmp_path / "nope.csv"
    proc = run("rank", "--results", missing, "--times", times_path)
    assert proc.returncode == 2
    assert str(missing) in proc.stderr


def test_mismatched_headers(tmp_path):
    r, t = write_pair(tmp_path, "benchmark,a,b\nx,1,2\n", "benchmark,b,a\nx,1,1\n")
    proc = run("rank", "--results", r, "--times", t)
    assert proc.returncode == 3
    assert "header mismatch" in proc.stderr


def test_bad_cell_reports_coordinate(tmp_path):
    r, t = write_pair(tmp_path, "benchmark,a,b\nx,1,2\ny,3,abc\n", "benchmark,a,b\nx,1,1\ny,1,1\n")
    proc = run("analyze", "--results", r, "--times", t)
    assert proc.returncode == 3
    assert "(y, b)" in proc.stderr


def test_analyze_degenerate(tied_pair):
    proc = run("analyze", "--results", tied_pair[0], "--times", tied_pair[1])
    assert proc.returncode == 4
    report = json.loads(proc.stdout)
    assert report["friedman"] is None
    assert report["posthoc"] is None
    assert "no discrimination" in report["notes"]["friedman"]


def test_analyze_dominance(dominant_pair):
    proc = run("analyze", "--results", dominant_pair[0], "--times", dominant_pair[1])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["friedman"]["reject_null"] is True
    assert report["friedman"]["statistic"] == pytest.approx(10.0)
    assert report["posthoc"]["algorithms"] == ["best", "mid", "worst"]
    assert report["ranks"]["rank_sums"] == {"best": 5.0, "mid": 10.0, "worst": 15.0}


def test_analyze_not_significant_exits_zero(tmp_path):
    r, t = write_pair(tmp_path, "benchmark,a,b\nx,1,2\ny,2,1\n", "benchmark,a,b\nx,1,1\ny,1,1\n")
    proc = run("analyze", "--results", r, "--times", t)
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["friedman"]["reject_null"] is False
    assert report["posthoc"] is None
    assert "post-hoc not run" in report["notes"]["posthoc"]


def _nulls(obj, path=""):
    if obj is None:
        yield path
    elif isinstance(obj, dict):
        for k, v in obj.items():
            yield from _nulls(v, f"{path}.{k}" if path else k)


def test_report_nulls_carry_reasons(results_path, times_path, tied_pair):
    for r, t in [(results_path, times_path), tied_pair]:
        report = json.loads(run("analyze", "--results", r, "--times", t).stdout)
        notes = report.pop("notes")
        for path in _nulls(report):
            if path.startswith("config."):
                continue
            assert path in notes, path


def test_analyze_json_schema(results_path, times_path):
    proc = run("analyze", "--results", results_path, "--times", times_path,
               "--cutoff", 100, "--alpha", 0.1, "--no-tie-correction")
    report = json.loads(proc.stdout)
    assert report["schema"] == 1
    assert report["tool"]["name"] == "benchrank"
    assert report["config"] == {"direction": "min", "alpha": 0.1, "tie_correction": False,
                                "cutoff": 100.0, "time_quantum": None,
                                "output_format": "json"}
    assert report["friedman"]["tie_corrected"] is False
    assert report["dataset"]["missing_counts"] == {"IR": 3, "FP": 4, "RECIPE": 1}
    assert set(report["shapiro"]) == {"IR", "FP", "RECIPE"}
    assert report["scores"]["solved_counts"] == {"IR": 9, "FP": 8, "RECIPE": 11}


def test_json_floats_use_17_digits(results_path, times_path):
    text = run("analyze", "--results", results_path, "--times", times_path).stdout
    assert '"alpha": 0.050000000000000003' in text
    assert '"IR": 2.0833333333333335' in text


def test_analyze_text_and_csv(results_path, times_path):
    text = run("analyze", "--results", results_path, "--times", times_path,
               "--format", "text", env={"BENCHRANK_NO_COLOR": "1"}).stdout
    assert "Friedman test" in text and "\033[" not in text
    table = list(csv.reader(run("analyze", "--results", results_path, "--times", times_path,
                                "--format", "csv").stdout.splitlines()))
    assert table[0][:4] == ["algorithm", "missing", "rank_sum", "mean_rank"]
    assert [row[0] for row in table[1:]] == ["IR", "FP", "RECIPE"]


def test_direction_max(tmp_path):
    r, t = write_pair(tmp_path, "benchmark,a,b\nx,5,3\n", "benchmark,a,b\nx,1,1\n")
    proc = run("rank", "--results", r, "--times", t, "--direction", "max")
    assert proc.stdout.splitlines()[1] == "x,1,2"


def test_time_quantum(tmp_path):
    r, t = write_pair(tmp_path, "benchmark,a,b\nx,5,5\n", "benchmark,a,b\nx,1.2,1.23\n")
    assert run("rank", "--results", r, "--times", t).stdout.splitlines()[1] == "x,1,2"
    out = run("rank", "--results", r, "--times", t, "--time-quantum", 0.1).stdout
    assert out.splitlines()[1] == "x,1.5,1.5"


def test_invalid_alpha_is_usage_error(results_path, times_path):
    proc = run("analyze", "--results", results_path, "--times", times_path, "--alpha", 2)
    assert proc.returncode == 2
    assert "alpha" in proc.stderr


def test_hist(tmp_path):
    r, t = write_pair(tmp_path, "benchmark,a,b\nx,1,2\ny,3,2\nz,NA,NA\n",
                      "benchmark,a,b\nx,1,1\ny,1,1\nz,NA,NA\n")
    out = tmp_path / "fig.svg"
    proc = run("hist", "--results", r, "--times", t, "--out", out)
    assert proc.returncode == 0
    assert out.read_text().lstrip().startswith("<?xml")
    rows = list(csv.reader((tmp_path / "fig.csv").read_text().splitlines()))
    # hand tally: a ranks (1, 2, 1.5), b ranks (2, 1, 1.5)
    assert rows == [["rank", "a", "b"], ["1", "1", "1"], ["1.5", "1", "1"], ["2", "1", "1"]]


def test_hist_unwritable(results_path, times_path, tmp_path):
    proc = run("hist", "--results", results_path, "--times", times_path,
               "--out", tmp_path / "no" / "such" / "dir" / "fig.svg")
    assert proc.returncode == 2


def test_scores_command(results_path, times_path):
    proc = run("scores", "--results", results_path, "--times", times_path, "--cutoff", 100)
    data = json.loads(proc.stdout)
    assert data["solved_counts"]["RECIPE"] == 11
    assert data["par10"]["IR"] == pytest.approx((49.0 + 3000) / 12)
    proc = run("scores", "--results", results_path, "--times", times_path)
    data = json.loads(proc.stdout)
    assert data["par10"]["IR"] is None
    assert data["notes"]["par10.IR"] == "no cutoff given"
