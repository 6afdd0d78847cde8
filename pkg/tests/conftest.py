import pytest

from qcartan.relations import builtin_presentation


@pytest.fixture(scope="session")
def table():
    return builtin_presentation()
