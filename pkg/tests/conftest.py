import json
import pathlib

import numpy as np
import pytest

from gennum import kernels
from gennum.gen_num import EpsGrid

_RESULTS = []
FROZEN_PATH = pathlib.Path(__file__).with_name("frozen_values.json")


def pytest_sessionstart(session):
    # compile the numba kernels once so timed tests measure steady state
    kernels.warmup()


@pytest.fixture(scope="session")
def frozen():
    return json.loads(FROZEN_PATH.read_text())


@pytest.fixture
def grid():
    return EpsGrid(32)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def acceptance():
    """Record one acceptance line; the summary is repeated at session end."""

    def record(number, title, passed, detail=""):
        line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else "")
        print(line)
        _RESULTS.append(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
