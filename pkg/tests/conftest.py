from fractions import Fraction

import pytest

from morsewalk.lattice_walk import CompletedWalk, StepProbabilities

REFERENCE_PROBS = StepProbabilities(Fraction(9, 20), Fraction(1, 20), Fraction(1, 2))
UNIFORM = StepProbabilities.uniform()
# a length-10 walk from (1, 0) to (1, 3) whose third step is (3, 0) -> (2, 1)
GENUS3_WALK = "RRDRDRDRLL"


@pytest.fixture
def reference_probs():
    return REFERENCE_PROBS


@pytest.fixture
def uniform():
    return UNIFORM


@pytest.fixture
def genus3_walk():
    return CompletedWalk.from_string(GENUS3_WALK)


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid] = (report.outcome, report.duration)
    elif "test_acceptance.py" in report.nodeid and report.failed:
        _acceptance[report.nodeid] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (outcome, duration) in _acceptance.items():
        name = nodeid.split("::")[-1]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}  ({duration:.2f}s)")
