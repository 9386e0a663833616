import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from strohwf import bimaterial_system, reference_pair

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def ref_pair():
    return reference_pair()


@pytest.fixture(scope="session")
def ref_system(ref_pair):
    return bimaterial_system(*ref_pair)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
