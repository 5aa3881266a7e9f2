import pytest

from tclab.ring_files import registry_ring
from tclab.rings import GradedRing


@pytest.fixture(scope="session")
def data_dir(pytestconfig):
    return pytestconfig.rootpath / "tests" / "data"


@pytest.fixture(scope="session")
def fermat7():
    """F_7[x,y,z]/(x^3 + y^3 + z^3), dim 2."""
    return GradedRing(registry_ring("fermat3", 7))


@pytest.fixture(scope="session")
def curve3():
    """The rational quartic cone over F_3 with sop a, d."""
    return GradedRing(registry_ring("curve4", 3))


@pytest.fixture(scope="session")
def poly2():
    return GradedRing(registry_ring("poly2", 7))


@pytest.fixture(scope="session")
def nodal5():
    return GradedRing(registry_ring("nodalline", 5))


@pytest.fixture(scope="session")
def curve7():
    return GradedRing(registry_ring("curve4", 7))
