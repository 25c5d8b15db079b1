import numpy as np
import pytest

from wallflux import euler
from wallflux.euler import GasModel, PrimitiveState


@pytest.fixture
def gas():
    return GasModel(1.4)


def random_unit_normal(rng):
    while True:
        n = rng.normal(size=3)
        norm = np.linalg.norm(n)
        if norm > 0.2:
            return n / norm


def random_state(rng, gas, max_mach=2.0):
    rho = rng.uniform(0.5, 2.0)
    p = rng.uniform(0.5, 2.0)
    c = np.sqrt(gas.gamma * p / rho)
    v = rng.uniform(-max_mach, max_mach, size=3) * c
    return euler.conservative_from_primitive(PrimitiveState(rho, v, p), gas)


def random_wall_state(rng, gas, n, max_mach=0.95):
    """State whose normal Mach number stays strictly subsonic."""
    rho = rng.uniform(0.5, 2.0)
    p = rng.uniform(0.5, 2.0)
    c = np.sqrt(gas.gamma * p / rho)
    ma = rng.uniform(-max_mach, max_mach)
    helper = np.zeros(3)
    helper[int(np.argmin(np.abs(n)))] = 1.0
    t1 = np.cross(n, helper)
    t1 /= np.linalg.norm(t1)
    t2 = np.cross(n, t1)
    v = ma * c * n + rng.uniform(-1.0, 1.0) * c * t1 + rng.uniform(-1.0, 1.0) * c * t2
    return euler.conservative_from_primitive(PrimitiveState(rho, v, p), gas)
