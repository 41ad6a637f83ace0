from __future__ import annotations

import functools

import pytest

from cliffsplit.abelian import parse_group_spec
from cliffsplit.symplectic import DoubleSpace, SymplecticGroup


@functools.lru_cache(maxsize=None)
def sp_of(spec: str) -> SymplecticGroup:
    return SymplecticGroup.enumerate(DoubleSpace(parse_group_spec(spec)))


@pytest.fixture(scope="session")
def sp():
    return sp_of


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
