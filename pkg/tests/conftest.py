import numpy as np
import pytest

from packgraph.graph import WeightedCompleteGraph


def graph_from_matrix(rows, class_tag="general", denom=1):
    w = np.array(rows, dtype=np.int64)
    return WeightedCompleteGraph(n=w.shape[0], w=w, class_tag=class_tag, denom=denom)


def uniform_graph(n, c, class_tag="general"):
    w = np.full((n, n), c, dtype=np.int64)
    np.fill_diagonal(w, 0)
    return WeightedCompleteGraph(n=n, w=w, class_tag=class_tag)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one pass/fail line per acceptance criterion in the terminal summary

_acceptance_outcomes = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" in report.nodeid:
        if report.when == "call" or (report.when == "setup" and not report.passed):
            _acceptance_outcomes[report.nodeid] = report.passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_acceptance_outcomes):
        name = nodeid.split("::")[-1]
        status = "PASS" if _acceptance_outcomes[nodeid] else "FAIL"
        terminalreporter.write_line(f"{name}: {status}")
