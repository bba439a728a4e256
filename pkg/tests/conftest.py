import pytest

from knapsack_ga import bundled_instance, dp_optimal


@pytest.fixture(scope="session")
def instance():
    return bundled_instance()


@pytest.fixture(scope="session")
def optimum(instance):
    return dp_optimal(instance)[0]
