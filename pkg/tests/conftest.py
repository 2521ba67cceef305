from __future__ import annotations

import pytest

from quintic_bcov.feynman import Gauge
from quintic_bcov.mirror import build_mirror, initial_table
from quintic_bcov.solver import ClassicalData, solve_genus


@pytest.fixture(scope="session")
def md12():
    return build_mirror(12)


@pytest.fixture(scope="session")
def md30():
    return build_mirror(30)


@pytest.fixture(scope="session")
def classical():
    return ClassicalData.default()


def _solved(order, gauge, classical):
    md = build_mirror(order)
    table = initial_table(md)
    reports = {g: solve_genus(g, gauge, md, table, classical) for g in (0, 1, 2)}
    return md, table, reports


@pytest.fixture(scope="session")
def solved_original(classical):
    """(md, table, reports) for the original gauge at q-order 16."""
    return _solved(16, Gauge.original(), classical)


@pytest.fixture(scope="session")
def solved_zero(classical):
    return _solved(16, Gauge.zero(), classical)


_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
