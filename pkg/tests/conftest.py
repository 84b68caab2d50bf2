import os
import sys
from pathlib import Path

import pytest

from semiring_rank.matrix import parse_matrix, parse_rational_matrix

sys.path.insert(0, os.path.dirname(__file__))

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load(name):
    return parse_matrix((FIXTURES / f"{name}.txt").read_text())


def load_rational(name):
    return parse_rational_matrix((FIXTURES / f"{name}.txt").read_text())


@pytest.fixture(scope="session")
def mats():
    """The worked-example matrices, keyed by fixture name."""
    names = ["A", "B", "C", "D", "uniqueW", "uniqueW_W", "complement3", "I3", "I4", "empty",
             "six_element_cone", "augmented2"]
    out = {n: load(n) for n in names}
    out["D_W"] = load_rational("D_W")
    out["D_H"] = load_rational("D_H")
    return out


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
