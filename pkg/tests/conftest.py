import sys

import pytest

from gaplab import GapCensus, build_census

from oracles import census_from_primes, trial_division_primes


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Replay acceptance verdict lines that stdout capture would hide."""
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "VERDICT_LINES", None) if module else None
    if lines:
        terminalreporter.section("acceptance verdicts")
        for line in lines:
            terminalreporter.line(line)


@pytest.fixture(scope="session")
def small_series():
    """Checkpoints 2^10 .. 2^16, built once."""
    return build_census(2**16, range(10, 17))


@pytest.fixture(scope="session")
def mid_series():
    """Checkpoints 2^10 .. 2^20, built once."""
    return build_census(2**20, range(10, 21))


@pytest.fixture(scope="session")
def oracle_census_100():
    """Census at x = 100 assembled from trial-division primes."""
    counts, pi_x, p_last = census_from_primes(trial_division_primes(100), 100)
    return GapCensus(x=100, counts=counts, pi_x=pi_x, p_last=p_last)


@pytest.fixture(scope="session")
def oracle_census_20():
    counts, pi_x, p_last = census_from_primes(trial_division_primes(20), 20)
    return GapCensus(x=20, counts=counts, pi_x=pi_x, p_last=p_last)
