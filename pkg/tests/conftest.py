"""Shared builders for the test suite."""

from functools import lru_cache

import pytest

from heckeklr.blockspectral import block_decomposition
from heckeklr.exactfield import make_field
from heckeklr.heckecore import build_hecke

GRID_FIELDS = ["Q,q=1", "GF(2),q=1", "GF(3),q=1", "Q,q=2", "Q,q=-1", "GF(7),q=2"]
LEVEL_ONE = [(0,)]
LEVEL_TWO = [(0, 1), (0, 0)]


@lru_cache(maxsize=None)
def field(spec):
    return make_field(spec)


@lru_cache(maxsize=None)
def algebra(spec, charges, d):
    return build_hecke(field(spec), list(charges), d)


@lru_cache(maxsize=None)
def decomposition(spec, charges, d):
    return block_decomposition(algebra(spec, charges, d))


def blocks(spec, charges, d):
    return list(decomposition(spec, charges, d).values())


@pytest.fixture
def rational():
    return field("Q,q=1")


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
