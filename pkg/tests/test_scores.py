import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from benchrank.dataset import BenchmarkDataset
from benchrank.scores import ert, par10, score_dataset


def test_par10_all_solved():
    assert par10([2, 4], cutoff=100) == 3


def test_par10_one_unsolved():
    assert par10([2, None], cutoff=100) == 501


def test_par10_all_unsolved():
    assert par10([None, None, np.nan], cutoff=7.5) == 75


def test_par10_clamps_with_warning():
    with pytest.warns(RuntimeWarning, match="exceed the cutoff"):
        assert par10([150, 50], cutoff=100) == 75


def test_par10_errors():
    with pytest.raises(ValueError):
        par10([], cutoff=1)
    with pytest.raises(ValueError):
        par10([1], cutoff=0)


@given(st.lists(st.floats(0, 100), min_size=1, max_size=10), st.integers(0, 5))
def test_par10_monotone_in_missing(times, extra):
    base = par10(times + [None] * extra, cutoff=100)
    more = par10(times + [None] * (extra + 1), cutoff=100)
    assert more >= base
    assert par10(times, cutoff=100) == pytest.approx(np.mean(times))


def test_ert_all_successful():
    assert ert([3, 5, 7], [True] * 3) == 5


def test_ert_worked_example():
    # RT_S = 10, RT_US = 50, p_S = 0.8
    assert ert([8, 12, 10, 10, 50], [True, True, True, True, False]) == pytest.approx(22.5,
                                                                                       abs=1e-12)


def test_ert_no_success():
    assert ert([1, 2], [False, False]) is None


@given(st.lists(st.tuples(st.floats(0.01, 1e4), st.booleans()), min_size=1, max_size=12))
def test_ert_bounds(trials):
    t = [x for x, _ in trials]
    ok = [s for _, s in trials]
    value = ert(t, ok)
    if not any(ok):
        assert value is None
        return
    rt_s = np.mean([x for x, s in trials if s])
    assert value >= rt_s * (1 - 1e-12)
    if all(ok):
        assert value == pytest.approx(rt_s)


def test_score_dataset(results_path, times_path):
    from benchrank.dataset import load_dataset

    ds = load_dataset(results_path, times_path, cutoff=100)
    sc = score_dataset(ds)
    assert sc.solved_counts == {"IR": 9, "FP": 8, "RECIPE": 11}
    ir_times = [12, 4, 5, 13, 1, 0.5, 8, 2.5, 3]
    assert sc.par10["IR"] == pytest.approx((sum(ir_times) + 3 * 1000) / 12)
    # unsolved IR cells have no recorded time, so each costs the cutoff
    assert sc.ert["IR"] == pytest.approx(np.mean(ir_times) + (3 / 12) / (9 / 12) * 100)


def test_score_dataset_without_cutoff():
    ds = BenchmarkDataset(["a", "b", "c"], ["x", "y"],
                          [[1, np.nan, np.nan], [2, 3, 4]],
                          [[1, 30, np.nan], [2, 6, 8]])
    sc = score_dataset(ds)
    assert sc.par10 == {"a": None, "b": None, "c": None}
    assert sc.ert["a"] == 1.5
    # b gave up on x after a recorded 30 s: RT_S = 6, RT_US = 30, p_S = 1/2
    assert sc.ert["b"] == 36
    # c gave up on x with no recorded time and there is no cutoff to charge
    assert sc.ert["c"] is None
    assert "ert.c" in sc.notes and "par10.a" in sc.notes
