import pytest

from digitsquares import make_field


@pytest.fixture(scope="session")
def field():
    """Shared field factory so dlog/quad tables are built once per session."""
    cache = {}

    def get(p, r):
        if (p, r) not in cache:
            cache[(p, r)] = make_field(p, r)
        return cache[(p, r)]

    return get
