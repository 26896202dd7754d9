"""Shared fixtures: the Betti tables several test modules lean on.

The two large tables are the expensive objects of the whole suite (the
modular backend needs a handful of seconds for Seg(1,1,1,1) and well under
a minute for Seg(2,2,1)), so they are computed once per session and shared
by the golden-output, conformance, and acceptance tests.  Build times are
recorded so the acceptance gate can check its runtime budgets against the
one build that actually happened.
"""

import time

import pytest

from segsyz import betti_table

BUILD_SECONDS = {}


def _timed_table(dims):
    start = time.perf_counter()
    table = betti_table(dims)
    BUILD_SECONDS[dims] = time.perf_counter() - start
    return table


@pytest.fixture(scope="session")
def table_11():
    return _timed_table((1, 1))


@pytest.fixture(scope="session")
def table_111():
    return _timed_table((1, 1, 1))


@pytest.fixture(scope="session")
def table_211():
    return _timed_table((2, 1, 1))


@pytest.fixture(scope="session")
def table_1111():
    return _timed_table((1, 1, 1, 1))


@pytest.fixture(scope="session")
def table_221():
    return _timed_table((2, 2, 1))


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, on every run that hit them."""
    try:
        from test_acceptance import CRITERIA
    except Exception:
        return
    status = {}
    for outcome, reports in terminalreporter.stats.items():
        if outcome not in ("passed", "failed", "error"):
            continue
        for rep in reports:
            name = getattr(rep, "location", (None, None, ""))[2]
            entry = CRITERIA.get(name)
            if entry is None:
                continue
            ok = outcome == "passed" and rep.when == "call"
            bad = outcome != "passed"
            if bad:
                status[entry] = False
            elif ok:
                status.setdefault(entry, True)
    if not status:
        return
    terminalreporter.section("acceptance criteria")
    for (number, label), ok in sorted(status.items()):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{verdict}  criterion {number}: {label}")
