import pytest

from reflectmimo import PERFECT_CONDUCTOR, VACUUM, Medium

FREQUENCY = 57.5e9


@pytest.fixture(scope="session")
def vacuum_medium() -> Medium:
    return Medium(FREQUENCY, VACUUM)


@pytest.fixture(scope="session")
def conductor_medium() -> Medium:
    return Medium(FREQUENCY, PERFECT_CONDUCTOR)
