"""Suite-wide SMAWK budget tally.

Every row-minima search issued anywhere in the suite is counted; a call that
inspects more than 8 * (rows + cols) entries fails the session.
"""
from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import twocut.monge as monge  # noqa: E402

SMAWK_BUDGET = 8
_tally = {"calls": 0, "worst": 0.0, "over": 0}


def _record(rows, cols, evaluations):
    _tally["calls"] += 1
    ratio = evaluations / (rows + cols)
    _tally["worst"] = max(_tally["worst"], ratio)
    if ratio > SMAWK_BUDGET:
        _tally["over"] += 1


@pytest.fixture(autouse=True, scope="session")
def _smawk_tally():
    original = monge.smawk_row_minima

    def counted(m, column_order=None):
        before = m.evaluations
        out = original(m, column_order)
        if m.rows and m.cols:
            _record(m.rows, m.cols, m.evaluations - before)
        return out

    monge.smawk_row_minima = counted
    yield _tally
    monge.smawk_row_minima = original


@pytest.fixture
def smawk_tally():
    return _tally


def pytest_terminal_summary(terminalreporter):
    if _tally["calls"]:
        terminalreporter.write_line(
            f"SMAWK budget: {_tally['calls']} calls, worst evaluations/(rows+cols) = {_tally['worst']:.3f}, "
            f"over {SMAWK_BUDGET}: {_tally['over']}")


def pytest_sessionfinish(session, exitstatus):
    if _tally["over"] and exitstatus == 0:
        session.exitstatus = 1
