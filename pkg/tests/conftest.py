"""Shared fixtures and the per-criterion summary for the acceptance suite."""

import re

import pytest

from drinfeld_heights.algebra import FiniteField, Poly, RatFunc
from drinfeld_heights.drinfeld import DrinfeldModule

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[(int(m.group(1)), m.group(2))] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), outcome in sorted(_CRITERIA.items()):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {name:<40s} {verdict}")


@pytest.fixture
def F2():
    return FiniteField(2)


@pytest.fixture
def F3():
    return FiniteField(3)


@pytest.fixture
def F4():
    return FiniteField(2, 2, [1, 1, 1])


@pytest.fixture
def carlitz2(F2):
    return DrinfeldModule.carlitz(F2)


@pytest.fixture
def inv_t(F2):
    return RatFunc.t(F2) ** -1


@pytest.fixture
def t2(F2):
    return Poly.t(F2)
