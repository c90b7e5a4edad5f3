import re

import pytest

from hypermod import datasets
from hypermod.hypercore import from_edges

_criteria = {}


@pytest.fixture(scope="session")
def corpus_pc():
    """200 random partition-connected hypergraphs, |V| <= 7, |E| <= 8."""
    return datasets.corpus(200, seed=2024)


@pytest.fixture(scope="session")
def corpus_connected():
    """200 random connected hypergraphs, partition-connected or not."""
    return datasets.corpus(200, seed=7, partition_connected=False)


@pytest.fixture
def twins():
    return datasets.load("twin_triples")


@pytest.fixture
def lone():
    return datasets.load("lone_triple")


@pytest.fixture
def tail():
    return datasets.load("triple_tail")


@pytest.fixture
def tri():
    return datasets.load("triangle")


@pytest.fixture
def path3():
    return datasets.load("path")


@pytest.fixture
def single():
    return from_edges([("a", "b")])


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.failed):
        _criteria[key] = (m.group(2).replace("_", " "), report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria):
        name, outcome, duration = _criteria[key]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {key:2d}: {status}  {name}  ({duration:.2f} s)")
