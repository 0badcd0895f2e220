import pytest

from psibar import build_sieve


@pytest.fixture(scope="session")
def table22():
    # shared large table; spf kept for factorization walks in the heavy tests
    return build_sieve(1 << 22, keep_spf=True)


@pytest.fixture(scope="session")
def table16():
    return build_sieve(1 << 16)
