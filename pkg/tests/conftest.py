import pytest

from chevcr.words import ChevalleyGroup


@pytest.fixture(scope="session")
def G():
    """F4 over K = F_4(t)."""
    return ChevalleyGroup("F4", 4)


@pytest.fixture(scope="session")
def K(G):
    return G.field


# filled by test_acceptance.report, printed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
