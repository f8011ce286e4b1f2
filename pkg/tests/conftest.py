import pytest

from hpmonoid.bii import bii_presentation
from hpmonoid.gmn import gmn_presentation


@pytest.fixture(scope="session")
def bii():
    return bii_presentation()


@pytest.fixture(scope="session")
def g22():
    return gmn_presentation(2, 2)


@pytest.fixture(scope="session")
def g23():
    return gmn_presentation(2, 3)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    """Collects the one-line verdicts printed after the test session."""
    return _ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
