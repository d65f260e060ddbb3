import pytest

from confluentpcp import sampledata


@pytest.fixture(scope="session")
def cars():
    return sampledata.cars_dataset()


@pytest.fixture(scope="session")
def occupancy():
    return sampledata.occupancy_dataset()
