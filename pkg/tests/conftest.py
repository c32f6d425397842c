import pytest

from planerank.services.table_store import table_store


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: needs more than a few seconds")


@pytest.fixture
def fresh_store():
    """Empty table cache before and after the test."""
    table_store.clear_all()
    yield table_store
    table_store.clear_all()


@pytest.fixture(scope="session")
def coarse_limits():
    """c_0..c_6 on a coarse grid; accurate to about 1e-9."""
    from planerank.services.limit_constants import compute_limits

    return compute_limits(6, 1e-5)
