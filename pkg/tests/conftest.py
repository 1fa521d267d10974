from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture
def results_path():
    return DATA / "results.csv"


@pytest.fixture
def times_path():
    return DATA / "times.csv"


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
