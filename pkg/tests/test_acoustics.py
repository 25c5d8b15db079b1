import numpy as np
import pytest

from wallflux import acoustics
from wallflux.acoustics import (
    DirectVariant,
    LinearScheme,
    LinearState,
    MeanState,
    boundary_energy_term,
    coefficient_matrix,
    direct_wall_flux_linear,
    linear_boundary_flux,
    matrix_abs_and_minus,
    mirror_state_linear,
    q_combination,
)
from wallflux.errors import NonzeroMeanNormalVelocity

from conftest import random_unit_normal


def unit_mean(v_bar=(0.0, 0.0, 0.0)):
    return MeanState(1.0, v_bar, 1.0 / 1.4, 1.4)  # c_bar = 1


def random_wall_mean(rng):
    n = random_unit_normal(rng)
    v = rng.uniform(-1.0, 1.0, size=3)
    v -= np.dot(v, n) * n
    return MeanState(rng.uniform(0.5, 2.0), v, rng.uniform(0.5, 2.0), 1.4), n


def random_linear_state(rng):
    return LinearState(rng.normal(), rng.normal(size=3), rng.normal())


def test_sound_speed_constants():
    mean = MeanState(2.0, 0.0, 1.5, 1.4)
    assert mean.c_bar == pytest.approx(np.sqrt(1.4 * 1.5 / 2.0), rel=1e-15)
    assert mean.a**2 + mean.b**2 == pytest.approx(mean.c_bar**2, rel=1e-15)


def test_coefficient_matrix_x_normal_matches_display():
    # zero mean velocity: only the b and a couplings of the x-matrix remain
    mean = unit_mean()
    a, b = mean.a, mean.b
    expected = np.array(
        [
            [0, b, 0, 0, 0],
            [b, 0, 0, 0, a],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
            [0, a, 0, 0, 0],
        ]
    )
    assert np.allclose(coefficient_matrix(mean, (1.0, 0.0, 0.0)), expected, atol=1e-15)


def test_coefficient_matrix_symmetric_and_diagonal():
    rng = np.random.default_rng(10)
    for _ in range(100):
        mean, n = random_wall_mean(rng)
        A = coefficient_matrix(mean, n)
        assert np.allclose(A, A.T, atol=1e-15)
        assert np.allclose(np.diag(A), 0.0, atol=1e-14)


def test_eigenvalues_oracle():
    # numerical eigensolve must give {-c, 0, 0, 0, +c}
    rng = np.random.default_rng(11)
    for _ in range(50):
        mean, n = random_wall_mean(rng)
        evals = np.sort(np.linalg.eigvalsh(coefficient_matrix(mean, n)))
        c = mean.c_bar
        assert np.allclose(evals, [-c, 0.0, 0.0, 0.0, c], atol=1e-13)


def test_abs_matrix_against_eigendecomposition_oracle():
    rng = np.random.default_rng(12)
    for _ in range(50):
        mean, n = random_wall_mean(rng)
        A = coefficient_matrix(mean, n)
        absA, A_minus = matrix_abs_and_minus(mean, n)
        evals, evecs = np.linalg.eigh(A)
        assert np.allclose(absA, evecs @ np.diag(np.abs(evals)) @ evecs.T, atol=1e-13)
        assert np.min(np.linalg.eigvalsh(absA)) >= -1e-12
        assert np.max(np.linalg.eigvalsh(A_minus)) <= 1e-12


def test_abs_matrix_quadratic_form():
    rng = np.random.default_rng(13)
    for _ in range(200):
        mean, n = random_wall_mean(rng)
        absA, A_minus = matrix_abs_and_minus(mean, n)
        c = mean.c_bar

        # restricted form: zero tangential perturbation
        v_n = rng.normal()
        U = LinearState(rng.normal(), v_n * n, rng.normal())
        u = U.as_vector()
        q = q_combination(U, mean)
        ma = v_n / c
        assert float(u @ absA @ u) == pytest.approx(q**2 / c + c**3 * ma**2, rel=1e-12, abs=1e-12)

        # tangential perturbations live in the kernel, so the identity is general
        U = random_linear_state(rng)
        u = U.as_vector()
        q = q_combination(U, mean)
        ma = U.normal_velocity(n) / c
        assert float(u @ absA @ u) == pytest.approx(q**2 / c + c**3 * ma**2, rel=1e-12, abs=1e-12)

        # minus-part pairing with the mirror state
        ext = mirror_state_linear(U, n).as_vector()
        want = q**2 / (2 * c) - 0.5 * c**3 * ma**2
        assert -float(u @ A_minus @ ext) == pytest.approx(want, rel=1e-12, abs=1e-12)


def test_nonzero_mean_normal_velocity_rejected():
    mean = MeanState(1.0, (0.5, 0.0, 0.0), 1.0, 1.4)
    with pytest.raises(NonzeroMeanNormalVelocity):
        matrix_abs_and_minus(mean, (1.0, 0.0, 0.0))
    # tangential mean flow is fine
    matrix_abs_and_minus(mean, (0.0, 1.0, 0.0))


def test_mirror_state():
    U = LinearState(0.3, (1.0, 2.0, 3.0), -0.2)
    ext = mirror_state_linear(U, (1.0, 0.0, 0.0))
    assert ext.rho_p == U.rho_p
    assert ext.P_p == U.P_p
    assert np.allclose(ext.V, (-1.0, 2.0, 3.0))

    rng = np.random.default_rng(14)
    for _ in range(100):
        n = random_unit_normal(rng)
        U = random_linear_state(rng)
        ext = mirror_state_linear(U, n)
        assert ext.normal_velocity(n) == pytest.approx(-U.normal_velocity(n), abs=1e-14)
        again = mirror_state_linear(ext, n)
        assert np.allclose(again.as_vector(), U.as_vector(), atol=1e-15)


def test_upwind_flux_consistency():
    rng = np.random.default_rng(15)
    mean, n = random_wall_mean(rng)
    U = random_linear_state(rng)
    f = linear_boundary_flux(U, U, mean, n, LinearScheme.UPWIND)
    assert np.allclose(f, coefficient_matrix(mean, n) @ U.as_vector(), atol=1e-14)


def test_central_flux_mirror_kills_normal_velocity():
    rng = np.random.default_rng(16)
    for _ in range(50):
        mean, n = random_wall_mean(rng)
        U = random_linear_state(rng)
        ext = mirror_state_linear(U, n)
        f = linear_boundary_flux(U, ext, mean, n, LinearScheme.CENTRAL)
        # first and last components carry b V*_n and a V*_n
        assert abs(f[0]) < 1e-14
        assert abs(f[4]) < 1e-14


def test_boundary_energy_closed_forms():
    rng = np.random.default_rng(17)
    for _ in range(1000):
        mean, n = random_wall_mean(rng)
        c = mean.c_bar
        U = random_linear_state(rng)
        ext = mirror_state_linear(U, n)
        ma = U.normal_velocity(n) / c
        scale = float(np.dot(U.as_vector(), U.as_vector())) * c + 1e-30

        b0 = boundary_energy_term(
            U, linear_boundary_flux(U, ext, mean, n, LinearScheme.CENTRAL), mean, n
        )
        assert abs(b0) < 1e-13 * scale

        b1 = boundary_energy_term(
            U, linear_boundary_flux(U, ext, mean, n, LinearScheme.UPWIND), mean, n
        )
        assert b1 == pytest.approx(c**3 * ma**2, rel=1e-12, abs=1e-12)

        lam = rng.uniform(0.5, 2.0) * c
        blf = boundary_energy_term(
            U,
            linear_boundary_flux(U, ext, mean, n, LinearScheme.LAX_FRIEDRICHS, lambda_max=lam),
            mean,
            n,
        )
        assert blf == pytest.approx(c**2 * lam * ma**2, rel=1e-12, abs=1e-12)


def test_boundary_energy_spot_value():
    # c_bar = 1, V_n = 0.1: upwind and LF (lambda_max = 1) both give 0.01
    mean = unit_mean()
    n = np.array([1.0, 0.0, 0.0])
    U = LinearState(0.0, (0.1, 0.0, 0.0), 0.0)
    ext = mirror_state_linear(U, n)
    b1 = boundary_energy_term(U, linear_boundary_flux(U, ext, mean, n, LinearScheme.UPWIND), mean, n)
    assert b1 == pytest.approx(0.01, rel=1e-12)
    blf = boundary_energy_term(
        U, linear_boundary_flux(U, ext, mean, n, LinearScheme.LAX_FRIEDRICHS), mean, n
    )
    assert blf == pytest.approx(0.01, rel=1e-12)


def test_direct_wall_flux_neutral_and_dissipative():
    rng = np.random.default_rng(18)
    for _ in range(200):
        mean, n = random_wall_mean(rng)
        c = mean.c_bar
        U = random_linear_state(rng)
        v_n = U.normal_velocity(n)

        f = direct_wall_flux_linear(U, mean, n, DirectVariant.NEUTRAL)
        assert abs(f[0]) == 0.0 and abs(f[4]) == 0.0  # V*_n = 0 enforced
        b = boundary_energy_term(U, f, mean, n)
        assert abs(b) < 1e-13 * (np.dot(U.as_vector(), U.as_vector()) * c + 1e-30)

        lam = rng.uniform(0.5, 2.0) * c
        f = direct_wall_flux_linear(U, mean, n, DirectVariant.LF_DISSIPATIVE, lambda_max=lam)
        b = boundary_energy_term(U, f, mean, n)
        ma = v_n / c
        assert b == pytest.approx(c**2 * lam * ma**2, rel=1e-12, abs=1e-13)

        # Q* - Q = lambda_max V_n
        q_star = float(np.dot(f[1:4], n))
        assert q_star - q_combination(U, mean) == pytest.approx(lam * v_n, rel=1e-12, abs=1e-13)


def test_direct_wall_flux_variants_coincide_at_zero_vn():
    mean = unit_mean()
    n = np.array([0.0, 0.0, 1.0])
    U = LinearState(0.4, (0.3, -0.2, 0.0), 0.1)  # V_n = 0
    f_neutral = direct_wall_flux_linear(U, mean, n, DirectVariant.NEUTRAL)
    f_diss = direct_wall_flux_linear(U, mean, n, DirectVariant.LF_DISSIPATIVE)
    assert np.allclose(f_neutral, f_diss, atol=1e-15)
    assert boundary_energy_term(U, f_diss, mean, n) == pytest.approx(0.0, abs=1e-14)
