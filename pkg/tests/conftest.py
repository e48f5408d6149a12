import pytest

from xwell import bound
from xwell.model import BarrierParams, WellParams

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def well():
    return WellParams(1.0, 1.0)


@pytest.fixture(scope="session")
def barrier():
    return BarrierParams(5.0, 1.0)


@pytest.fixture(scope="session")
def thin_barrier():
    return BarrierParams(5.0, 0.2)


@pytest.fixture(scope="session")
def spectrum(well):
    return bound.solve_spectrum(well, 3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
