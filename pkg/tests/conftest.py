import pytest

from primorial_lab.prime_engine import sieve_up_to


@pytest.fixture(scope="session")
def table():
    """Default working table (the CLI default scale)."""
    return sieve_up_to(2_000_000)


@pytest.fixture(scope="session")
def table_10m():
    """Large table for the full-range inequality sweeps."""
    return sieve_up_to(10_000_000)
