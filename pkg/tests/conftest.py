import pytest

from helpers import RESULTS, mixed, q_closure, unit_interval, z_window


@pytest.fixture
def Z():
    return z_window()


@pytest.fixture
def R():
    return unit_interval()


@pytest.fixture
def M():
    return mixed()


@pytest.fixture
def Qc():
    return q_closure()


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])

