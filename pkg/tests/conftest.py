import pytest

from ballcert.construction import Pipeline


@pytest.fixture(scope="session")
def pipeline():
    return Pipeline()
