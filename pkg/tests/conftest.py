import numpy as np
import pytest
from sklearn.datasets import load_iris, load_wine

from granball import Dataset

ACCEPTANCE_LINES = []


def record(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)


def line_data(values):
    return Dataset(np.asarray(values, dtype=float).reshape(-1, 1))


@pytest.fixture(scope="session")
def iris():
    b = load_iris()
    return Dataset(b.data, b.target, "iris")


@pytest.fixture(scope="session")
def wine():
    b = load_wine()
    return Dataset(b.data, b.target, "wine")
