import numpy as np
import pytest

from mobiuslab.arithmetic import sieve_mobius

# lines recorded by tests/test_acceptance.py, echoed in the terminal summary
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def table_small():
    return sieve_mobius(20_000)


@pytest.fixture(scope="session")
def table6():
    # a little headroom past 10^6 for shifted correlations
    return sieve_mobius(1_000_100)


@pytest.fixture(scope="session")
def table7():
    return sieve_mobius(10_000_000)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
