import numpy as np
import pytest

from fremder import SolverConfig


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


@pytest.fixture
def cfg():
    return SolverConfig()


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
