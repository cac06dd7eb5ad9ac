import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from otpuc.fixtures import all_measures, ger_tuples  # noqa: E402

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def fixture_measures():
    return all_measures()


@pytest.fixture(scope="session")
def ger_family():
    return ger_tuples(8)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
