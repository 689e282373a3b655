import numpy as np
import pytest

from torusbundles import Torus


@pytest.fixture
def torus():
    """Square torus, tau = i."""
    return Torus(1j)


@pytest.fixture
def torus_generic():
    return Torus(0.3 + 1.1j)


@pytest.fixture(params=[1j, 0.3 + 1.1j], ids=["square", "generic"])
def any_torus(request):
    return Torus(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
