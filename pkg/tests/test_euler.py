import numpy as np
import pytest

from wallflux import euler
from wallflux.errors import (
    GammaOutOfRange,
    NonPositiveDensity,
    NonPositivePressure,
    NonUnitNormal,
)
from wallflux.euler import ConservativeState, GasModel, PrimitiveState

from conftest import random_state, random_unit_normal


def test_gamma_validation():
    GasModel(1.01)
    GasModel(2.9)
    for bad in (1.0, 3.0, 0.5, 3.5):
        with pytest.raises(GammaOutOfRange):
            GasModel(bad)


def test_primitive_from_conservative_rest(gas):
    q = euler.primitive_from_conservative(ConservativeState(1.0, 0.0, 2.5), gas)
    assert q.rho == 1.0
    assert np.all(q.v == 0.0)
    assert q.p == pytest.approx(1.0, abs=1e-15)


def test_primitive_from_conservative_moving(gas):
    # direct evaluation: p = 0.4 * (6 - 0.5 * 2 * 1) = 2
    q = euler.primitive_from_conservative(ConservativeState(2.0, (2.0, 0.0, 0.0), 6.0), gas)
    assert q.rho == 2.0
    assert np.allclose(q.v, (1.0, 0.0, 0.0), atol=1e-15)
    assert q.p == pytest.approx(2.0, abs=1e-14)


def test_invalid_states_raise(gas):
    with pytest.raises(NonPositivePressure):
        euler.primitive_from_conservative(ConservativeState(1.0, 0.0, 0.0), gas)
    with pytest.raises(NonPositiveDensity):
        euler.primitive_from_conservative(ConservativeState(-1.0, 0.0, 1.0), gas)
    with pytest.raises(NonPositivePressure):
        euler.conservative_from_primitive(PrimitiveState(1.0, 0.0, -0.5), gas)


def test_conservative_from_primitive_examples(gas):
    u = euler.conservative_from_primitive(PrimitiveState(1.0, 0.0, 1.0), gas)
    assert u.E == pytest.approx(2.5, abs=1e-15)
    u = euler.conservative_from_primitive(PrimitiveState(2.0, (1.0, 0.0, 0.0), 2.0), gas)
    assert np.allclose(u.mom, (2.0, 0.0, 0.0))
    assert u.E == pytest.approx(6.0, abs=1e-14)


def test_round_trip_is_identity(gas):
    rng = np.random.default_rng(1)
    for _ in range(1000):
        u = random_state(rng, gas)
        back = euler.conservative_from_primitive(euler.primitive_from_conservative(u, gas), gas)
        assert back.rho == pytest.approx(u.rho, rel=1e-14)
        assert np.allclose(back.mom, u.mom, rtol=1e-14, atol=1e-14)
        assert back.E == pytest.approx(u.E, rel=1e-14)


def test_normal_flux_rest_state(gas):
    u = euler.conservative_from_primitive(PrimitiveState(1.0, 0.0, 1.0), gas)
    for n in ((1, 0, 0), (0, -1, 0), (0.6, 0.8, 0.0)):
        f = euler.physical_normal_flux(u, np.asarray(n, dtype=float), gas)
        assert f[0] == 0.0
        assert f[4] == 0.0
        assert np.allclose(f[1:4], np.asarray(n, dtype=float), atol=1e-15)


def test_normal_flux_moving_state(gas):
    # rho=1, v=(2,0,0), p=1: E = 1/0.4 + 2 = 4.5, energy flux (E+p) v1 = 11
    u = euler.conservative_from_primitive(PrimitiveState(1.0, (2.0, 0.0, 0.0), 1.0), gas)
    f = euler.physical_normal_flux(u, (1.0, 0.0, 0.0), gas)
    assert np.allclose(f, [2.0, 5.0, 0.0, 0.0, 11.0], atol=1e-13)


def test_normal_flux_rotation_oracle(gas):
    # flux through n must equal the rotated 1D flux of the rotated state
    rng = np.random.default_rng(2)
    for _ in range(100):
        u = random_state(rng, gas)
        n = random_unit_normal(rng)
        helper = np.zeros(3)
        helper[int(np.argmin(np.abs(n)))] = 1.0
        t1 = np.cross(n, helper)
        t1 /= np.linalg.norm(t1)
        t2 = np.cross(n, t1)
        R = np.vstack((n, t1, t2))
        rotated = np.concatenate(([u.rho], R @ u.mom, [u.E]))
        f1 = euler.x_flux_of(rotated, gas.gamma)
        expected = np.concatenate(([f1[0]], R.T @ f1[1:4], [f1[4]]))
        got = euler.physical_normal_flux(u, n, gas)
        assert np.allclose(got, expected, atol=1e-13)


def test_normal_flux_tangential_velocity_zero_mass_energy(gas):
    u = euler.conservative_from_primitive(PrimitiveState(1.2, (0.0, 0.8, -0.4), 0.7), gas)
    f = euler.physical_normal_flux(u, (1.0, 0.0, 0.0), gas)
    assert f[0] == 0.0
    assert f[4] == 0.0


def test_non_unit_normal_rejected(gas):
    u = euler.conservative_from_primitive(PrimitiveState(1.0, 0.0, 1.0), gas)
    with pytest.raises(NonUnitNormal):
        euler.physical_normal_flux(u, (1.0, 1.0, 0.0), gas)


def test_entropy_quantities_rest(gas):
    u = euler.conservative_from_primitive(PrimitiveState(1.0, 0.0, 1.0), gas)
    eq = euler.entropy_quantities(u, gas)
    assert eq.sigma == 0.0
    assert eq.s == 0.0
    assert eq.beta == pytest.approx(0.5, abs=1e-15)
    assert np.allclose(eq.w, [3.5, 0.0, 0.0, 0.0, -1.0], atol=1e-14)


def test_entropy_sign(gas):
    p = np.exp(gas.gamma - 1.0)
    u = euler.conservative_from_primitive(PrimitiveState(1.0, 0.0, p), gas)
    eq = euler.entropy_quantities(u, gas)
    assert eq.sigma == pytest.approx(gas.gamma - 1.0, rel=1e-14)
    assert eq.s == pytest.approx(-1.0, rel=1e-14)


def test_entropy_contraction_finite_difference(gas):
    # central difference of s along a random direction against w . du
    rng = np.random.default_rng(3)
    h = 1e-7
    for _ in range(200):
        u = random_state(rng, gas, max_mach=1.0)
        w = euler.entropy_quantities(u, gas).w
        du = rng.normal(size=5) * h
        plus = ConservativeState(u.rho + du[0], u.mom + du[1:4], u.E + du[4])
        minus = ConservativeState(u.rho - du[0], u.mom - du[1:4], u.E - du[4])
        ds = euler.entropy_quantities(plus, gas).s - euler.entropy_quantities(minus, gas).s
        assert abs(2.0 * float(np.dot(w, du)) - ds) < 1e-6 * abs(ds)


def test_entropy_normal_flux(gas):
    u = euler.conservative_from_primitive(PrimitiveState(1.0, (0.0, 0.3, 0.0), 1.0), gas)
    assert euler.entropy_normal_flux(u, (1.0, 0.0, 0.0), gas) == 0.0

    # sigma = 0 at rho = p = 1, so s = 0 regardless of velocity
    u = euler.conservative_from_primitive(PrimitiveState(1.0, (1.0, 0.0, 0.0), 1.0), gas)
    assert euler.entropy_normal_flux(u, (1.0, 0.0, 0.0), gas) == 0.0

    u = euler.conservative_from_primitive(PrimitiveState(2.0, (0.5, 0.0, 0.0), 1.5), gas)
    eq = euler.entropy_quantities(u, gas)
    got = euler.entropy_normal_flux(u, (1.0, 0.0, 0.0), gas)
    assert got == pytest.approx(eq.s * 0.5, rel=1e-14)
