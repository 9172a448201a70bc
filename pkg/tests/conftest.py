import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.polyforms import poly_parse  # noqa: E402
from services.fermat_service import fermat_polynomial  # noqa: E402
from services.milnor_service import MilnorService  # noqa: E402


@pytest.fixture(scope="session")
def registry():
    return MilnorService()


@pytest.fixture(scope="session")
def cubic_surface(registry):
    return registry.get_algebra(fermat_polynomial(3, 4), 2)


@pytest.fixture(scope="session")
def quartic_k3(registry):
    return registry.get_algebra(fermat_polynomial(4, 4), 2)


@pytest.fixture(scope="session")
def cubic_points(registry):
    """x0³ + x1³, n = 0"""
    return registry.get_algebra(fermat_polynomial(3, 2), 0)


@pytest.fixture
def parse():
    return poly_parse
