from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polyuni.enumeration import generate_census  # noqa: E402


@pytest.fixture(scope="session")
def census10():
    return generate_census(10)


@pytest.fixture(scope="session")
def census8(census10):
    return [g for p in range(4, 9) for g in census10.graphs(p)]


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
