from pathlib import Path

import pytest

from limp.oracle import enumerate_types

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


@pytest.fixture(scope="session")
def types3():
    return enumerate_types(3)


@pytest.fixture(scope="session")
def types5():
    return enumerate_types(5)


@pytest.fixture(scope="session")
def types7():
    return enumerate_types(7)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k[0]), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
