"""Self-contained property suite behind the ``verify`` command.

Each check exercises one family of identities with seeded random sampling and
returns a pass/fail result with a short diagnostic.  ``trials`` scales every
sample count; ``fault`` is a deliberate-mutation hook used to prove that the
suite actually bites (currently: flipping the sign of the Roe stability
threshold must fail exactly the Roe sign-change check).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import acoustics, dgsem, euler, riemann, wall
from .euler import ConservativeState, GasModel
from .wall import WallFluxKind

FAULT_ROE_THRESHOLD_SIGN = "roe-threshold-sign"
KNOWN_FAULTS = (FAULT_ROE_THRESHOLD_SIGN,)

GAS = GasModel(1.4)

#: closed-form wall kind matching each approximate solver
SOLVER_KINDS = {
    riemann.ApproximateSolver.LAX_FRIEDRICHS: WallFluxKind.LAX_FRIEDRICHS,
    riemann.ApproximateSolver.HLL: WallFluxKind.HLL,
    riemann.ApproximateSolver.HLLC: WallFluxKind.HLLC,
    riemann.ApproximateSolver.ROE: WallFluxKind.ROE,
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_unit_normal(rng) -> np.ndarray:
    while True:
        n = rng.normal(size=3)
        norm = np.linalg.norm(n)
        if norm > 0.2:
            return n / norm


def random_state(rng, max_mach: float = 2.0) -> ConservativeState:
    """Random valid state with O(1) density and pressure."""
    rho = rng.uniform(0.5, 2.0)
    p = rng.uniform(0.5, 2.0)
    c = np.sqrt(GAS.gamma * p / rho)
    v = rng.uniform(-max_mach, max_mach, size=3) * c
    return euler.conservative_from_primitive(euler.PrimitiveState(rho, v, p), GAS)


def random_wall_state(rng, n, max_mach: float = 0.95) -> ConservativeState:
    """Random state whose normal Mach number stays strictly subsonic."""
    rho = rng.uniform(0.5, 2.0)
    p = rng.uniform(0.5, 2.0)
    c = np.sqrt(GAS.gamma * p / rho)
    ma = rng.uniform(-max_mach, max_mach)
    t1, t2 = riemann.orthonormal_triad(n)[1:]
    v = ma * c * np.asarray(n) + rng.uniform(-1.0, 1.0) * c * t1 + rng.uniform(-1.0, 1.0) * c * t2
    return euler.conservative_from_primitive(euler.PrimitiveState(rho, v, p), GAS)


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------


def check_state_round_trip(rng, trials: int) -> CheckResult:
    worst = 0.0
    for _ in range(200 * trials):
        u = random_state(rng)
        q = euler.primitive_from_conservative(u, GAS)
        back = euler.conservative_from_primitive(q, GAS)
        err = max(
            abs(back.rho - u.rho) / u.rho,
            float(np.max(np.abs(back.mom - u.mom))) / max(1.0, float(np.max(np.abs(u.mom)))),
            abs(back.E - u.E) / u.E,
        )
        worst = max(worst, err)
    return CheckResult("state-round-trip", worst < 1e-14, f"max rel err {worst:.3g}")


def check_entropy_contraction(rng, trials: int) -> CheckResult:
    worst = 0.0
    h = 1e-7
    for _ in range(100 * trials):
        u = random_state(rng, max_mach=1.0)
        w = euler.entropy_quantities(u, GAS).w
        du = rng.normal(size=5) * h
        plus = ConservativeState(u.rho + du[0], u.mom + du[1:4], u.E + du[4])
        minus = ConservativeState(u.rho - du[0], u.mom - du[1:4], u.E - du[4])
        ds = euler.entropy_quantities(plus, GAS).s - euler.entropy_quantities(minus, GAS).s
        if ds == 0.0:
            continue
        worst = max(worst, abs(2.0 * float(np.dot(w, du)) - ds) / abs(ds))
    return CheckResult("entropy-contraction", worst < 1e-6, f"max rel err {worst:.3g}")


def check_flux_rotation(rng, trials: int) -> CheckResult:
    worst = 0.0
    for _ in range(100 * trials):
        u = random_state(rng)
        n = _random_unit_normal(rng)
        triad = riemann.orthonormal_triad(n)
        rotated = np.concatenate(([u.rho], triad @ u.mom, [u.E]))
        f1 = euler.x_flux_of(rotated, GAS.gamma)
        via_rotation = np.concatenate(([f1[0]], triad.T @ f1[1:4], [f1[4]]))
        direct = euler.physical_normal_flux(u, n, GAS)
        worst = max(worst, float(np.max(np.abs(direct - via_rotation))))
    return CheckResult("flux-rotation", worst < 1e-13, f"max abs err {worst:.3g}")


def _random_wall_mean(rng) -> tuple[acoustics.MeanState, np.ndarray]:
    n = _random_unit_normal(rng)
    v = rng.uniform(-1.0, 1.0, size=3)
    v -= np.dot(v, n) * n  # tangential mean flow only
    mean = acoustics.MeanState(rng.uniform(0.5, 2.0), v, rng.uniform(0.5, 2.0), GAS.gamma)
    return mean, n


def check_normal_matrix_eigenstructure(rng, trials: int) -> CheckResult:
    worst = 0.0
    for _ in range(50 * trials):
        mean, n = _random_wall_mean(rng)
        A = acoustics.coefficient_matrix(mean, n)
        absA, A_minus = acoustics.matrix_abs_and_minus(mean, n)
        evals, evecs = np.linalg.eigh(A)
        worst = max(worst, float(np.max(np.abs(evecs @ np.diag(np.abs(evals)) @ evecs.T - absA))))
        expected = np.sort(np.array([-mean.c_bar, 0.0, 0.0, 0.0, mean.c_bar]))
        worst = max(worst, float(np.max(np.abs(np.sort(evals) - expected))))
        worst = max(worst, max(0.0, float(np.max(np.linalg.eigvalsh(A_minus)))))
    return CheckResult(
        "normal-matrix-eigenstructure", worst < 1e-12, f"max residual {worst:.3g}"
    )


def check_linear_closed_forms(rng, trials: int) -> CheckResult:
    worst = 0.0
    for _ in range(200 * trials):
        mean, n = _random_wall_mean(rng)
        c = mean.c_bar
        U = acoustics.LinearState(rng.normal(), rng.normal(size=3), rng.normal())
        ext = acoustics.mirror_state_linear(U, n)
        ma = U.normal_velocity(n) / c

        f0 = acoustics.linear_boundary_flux(U, ext, mean, n, acoustics.LinearScheme.CENTRAL)
        b0 = acoustics.boundary_energy_term(U, f0, mean, n)
        worst = max(worst, abs(b0))

        f1 = acoustics.linear_boundary_flux(U, ext, mean, n, acoustics.LinearScheme.UPWIND)
        b1 = acoustics.boundary_energy_term(U, f1, mean, n)
        worst = max(worst, abs(b1 - c**3 * ma**2))

        lam = rng.uniform(0.5, 2.0) * c
        f2 = acoustics.linear_boundary_flux(
            U, ext, mean, n, acoustics.LinearScheme.LAX_FRIEDRICHS, lambda_max=lam
        )
        b2 = acoustics.boundary_energy_term(U, f2, mean, n)
        worst = max(worst, abs(b2 - c**2 * lam * ma**2))

        absA, _ = acoustics.matrix_abs_and_minus(mean, n)
        u = U.as_vector()
        q = acoustics.q_combination(U, mean)
        worst = max(worst, abs(float(u @ absA @ u) - (q**2 / c + c**3 * ma**2)))
    return CheckResult("linear-closed-forms", worst < 1e-12, f"max residual {worst:.3g}")


def check_wall_spot_values(rng, trials: int) -> CheckResult:
    cases = [
        (WallFluxKind.LAX_FRIEDRICHS, 0.5, 2.4),
        (WallFluxKind.LAX_FRIEDRICHS, -0.5, 0.3),
        (WallFluxKind.HLL, 0.5, 1.7),
        (WallFluxKind.EC_LF, 0.5, 2.05),
        (WallFluxKind.EC_LF, -0.5, -0.05),
        (WallFluxKind.EXACT_RP, -0.5, 0.9**7),
    ]
    worst = 0.0
    for kind, ma, expected in cases:
        worst = max(worst, abs(wall.pstar_ratio(kind, ma, GAS) - expected))
    shock = wall.pstar_ratio(WallFluxKind.EXACT_RP, 1.0, GAS)
    worst = max(worst, abs(shock - (1.0 + 1.4 * (0.6 + np.sqrt(1.36)))))
    return CheckResult("wall-spot-values", worst < 1e-12, f"max abs err {worst:.3g}")


def check_hllc_ec_roe_coincide(rng, trials: int) -> CheckResult:
    grid = np.linspace(-4.9, 5.0, 1000 * trials + 1)
    hll = wall.pstar_ratio(WallFluxKind.HLL, grid, GAS)
    same = np.array_equal(wall.pstar_ratio(WallFluxKind.HLLC, grid, GAS), hll) and np.array_equal(
        wall.pstar_ratio(WallFluxKind.EC_ROE, grid, GAS), hll
    )
    return CheckResult("hllc-ec-roe-coincide", same, "bitwise identical" if same else "mismatch")


STABLE_KINDS = (
    WallFluxKind.EXACT_RP,
    WallFluxKind.LAX_FRIEDRICHS,
    WallFluxKind.HLL,
    WallFluxKind.HLLC,
    WallFluxKind.EC_LF,
    WallFluxKind.EC_ROE,
)


def check_entropy_sign_sweep(rng, trials: int) -> CheckResult:
    grid = np.linspace(wall.vacuum_limit(GAS) + 1e-3, 5.0, 10_000 * trials)
    worst = 0.0
    for kind in STABLE_KINDS:
        ds = wall.delta_s(1.0, 1.0, grid, wall.pstar_ratio(kind, grid, GAS))
        worst = min(worst, float(np.min(ds)))
    return CheckResult("entropy-sign-sweep", worst >= -1e-14, f"min delta_s {worst:.3g}")


def check_roe_sign_change(rng, trials: int, fault: str | None = None) -> CheckResult:
    threshold = wall.roe_threshold(GAS)
    if fault == FAULT_ROE_THRESHOLD_SIGN:
        threshold = -threshold
    above = np.linspace(threshold, 5.0, 5000 * trials)
    below = np.linspace(wall.vacuum_limit(GAS) + 1e-3, threshold - 1e-6, 5000 * trials)
    ds_above = wall.delta_s(1.0, 1.0, above, wall.pstar_ratio(WallFluxKind.ROE, above, GAS))
    ds_below = wall.delta_s(1.0, 1.0, below, wall.pstar_ratio(WallFluxKind.ROE, below, GAS))
    ok = float(np.min(ds_above)) >= -1e-14 and bool(np.all(ds_below < 0.0))
    return CheckResult(
        "roe-sign-change",
        ok,
        f"min above {float(np.min(ds_above)):.3g}, max below {float(np.max(ds_below)):.3g}",
    )


def check_wall_oracle_equivalence(rng, trials: int) -> CheckResult:
    worst_rel = 0.0
    worst_zero = 0.0
    for _ in range(200 * trials):
        n = _random_unit_normal(rng)
        u = random_wall_state(rng, n)
        uL, uR = wall.mirror_state(u, n)
        pair = riemann.RiemannPair(uL, uR, n)
        p = euler.primitive_from_conservative(u, GAS).p
        for solver, kind in SOLVER_KINDS.items():
            got = riemann.approximate_flux(solver, pair, GAS)
            want = wall.wall_flux(kind, u, n, GAS)
            # P* crosses zero near Ma_n = -1/gamma, so the error is measured
            # against the natural flux scale, not the possibly tiny |P*|
            scale = max(float(np.max(np.abs(want))), p)
            worst_rel = max(worst_rel, float(np.max(np.abs(got - want))) / scale)
            worst_zero = max(worst_zero, abs(got[0]), abs(got[4]))
    ok = worst_rel < 1e-12 and worst_zero < 1e-13
    return CheckResult(
        "wall-oracle-equivalence",
        ok,
        f"max rel err {worst_rel:.3g}, max mass/energy leak {worst_zero:.3g}",
    )


def check_exact_rp_closed_form(rng, trials: int) -> CheckResult:
    n = np.array([1.0, 0.0, 0.0])
    mas = np.linspace(-4.9, 5.0, 200 * trials)
    worst = 0.0
    for ma in mas:
        rho, p = 1.0, 1.0
        c = np.sqrt(GAS.gamma)
        u = euler.conservative_from_primitive(
            euler.PrimitiveState(rho, np.array([ma * c, 0.0, 0.0]), p), GAS
        )
        uL, uR = wall.mirror_state(u, n)
        star = riemann.exact_riemann_star(riemann.RiemannPair(uL, uR, n), GAS)
        want = p * wall.pstar_ratio(WallFluxKind.EXACT_RP, float(ma), GAS)
        worst = max(worst, abs(star.p_star - want) / want, abs(star.u_star))
    sodL = euler.conservative_from_primitive(euler.PrimitiveState(1.0, 0.0, 1.0), GAS)
    sodR = euler.conservative_from_primitive(euler.PrimitiveState(0.125, 0.0, 0.1), GAS)
    sod = riemann.exact_riemann_star(riemann.RiemannPair(sodL, sodR, n), GAS)
    ok = worst < 1e-10 and abs(sod.p_star - 0.30313) < 1e-4
    return CheckResult(
        "exact-rp-closed-form", ok, f"max rel err {worst:.3g}, Sod p* {sod.p_star:.6g}"
    )


def check_entropy_term_reduction(rng, trials: int) -> CheckResult:
    worst = 0.0
    for _ in range(150 * trials):
        n = _random_unit_normal(rng)
        u = random_wall_state(rng, n, max_mach=2.0)
        ma = wall.normal_mach(u, n, GAS)
        q = euler.primitive_from_conservative(u, GAS)
        v_n = ma * q.sound_speed(GAS)
        for kind in WallFluxKind:
            f_star = wall.wall_flux(kind, u, n, GAS)
            general = wall.entropy_boundary_term(u, f_star, n, GAS)
            reduced = q.rho * v_n * (wall.pstar_ratio(kind, ma, GAS) - 1.0)
            worst = max(worst, abs(general - reduced))
    return CheckResult("entropy-term-reduction", worst < 1e-12, f"max abs err {worst:.3g}")


def check_flux_conservation_symmetry(rng, trials: int) -> CheckResult:
    # subsonic normal velocities keep the one-sided wave speed estimates
    # well-ordered (S_L < 0 < S_R), which the branch symmetry relies on
    worst_cons = 0.0
    worst_sym = 0.0
    for _ in range(100 * trials):
        n = _random_unit_normal(rng)
        uA = random_wall_state(rng, n)
        uB = random_wall_state(rng, n)
        pair = riemann.RiemannPair(uA, uB, n)
        flipped = riemann.RiemannPair(uB, uA, -n)
        same = riemann.RiemannPair(uA, uA, n)
        fn = euler.physical_normal_flux(uA, n, GAS)
        for solver in riemann.ApproximateSolver:
            worst_cons = max(
                worst_cons,
                float(np.max(np.abs(riemann.approximate_flux(solver, same, GAS) - fn))),
            )
            worst_sym = max(
                worst_sym,
                float(
                    np.max(
                        np.abs(
                            riemann.approximate_flux(solver, pair, GAS)
                            + riemann.approximate_flux(solver, flipped, GAS)
                        )
                    )
                ),
            )
    ok = worst_cons < 1e-12 and worst_sym < 1e-13
    return CheckResult(
        "flux-conservation-symmetry",
        ok,
        f"consistency {worst_cons:.3g}, symmetry {worst_sym:.3g}",
    )


def check_sbp_identity(rng, trials: int) -> CheckResult:
    worst = 0.0
    for N in range(1, 9):
        _, w = dgsem.lgl_nodes_weights(N)
        D = dgsem.derivative_matrix(N)
        M = np.diag(w)
        B = np.zeros((N + 1, N + 1))
        B[0, 0] = -1.0
        B[-1, -1] = 1.0
        worst = max(worst, float(np.max(np.abs(M @ D + D.T @ M - B))))
    return CheckResult("sbp-identity", worst < 1e-13, f"max residual {worst:.3g}")


def check_lgl_quadrature(rng, trials: int) -> CheckResult:
    worst = 0.0
    for N in range(1, 9):
        x, w = dgsem.lgl_nodes_weights(N)
        worst = max(worst, abs(float(np.sum(w)) - 2.0))
        for k in range(2 * N):
            exact = 2.0 / (k + 1) if k % 2 == 0 else 0.0
            worst = max(worst, abs(float(np.dot(w, x**k)) - exact))
    return CheckResult("lgl-quadrature", worst < 1e-13, f"max residual {worst:.3g}")


def check_tadmor_condition(rng, trials: int) -> CheckResult:
    worst = 0.0
    for _ in range(2000 * trials):
        uL = random_state(rng, max_mach=1.5).as_array()
        if rng.uniform() < 0.1:  # exercise the log-mean series branch
            uR = uL * (1.0 + rng.uniform(-1e-6, 1e-6, size=5))
        else:
            uR = random_state(rng, max_mach=1.5).as_array()
        f = dgsem.ec_volume_flux(uL, uR, GAS.gamma)
        wL = euler.entropy_variables_of(uL, GAS.gamma)
        wR = euler.entropy_variables_of(uR, GAS.gamma)
        psi_jump = uR[1] - uL[1]  # potential psi = rho v1 = m1
        lhs = float(np.dot(wR - wL, f))
        worst = max(worst, abs(lhs - psi_jump) / max(1.0, abs(psi_jump)))
    return CheckResult("tadmor-condition", worst < 1e-11, f"max rel residual {worst:.3g}")


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

CHECKS: tuple[Callable, ...] = (
    check_state_round_trip,
    check_entropy_contraction,
    check_flux_rotation,
    check_normal_matrix_eigenstructure,
    check_linear_closed_forms,
    check_wall_spot_values,
    check_hllc_ec_roe_coincide,
    check_entropy_sign_sweep,
    check_roe_sign_change,
    check_wall_oracle_equivalence,
    check_exact_rp_closed_form,
    check_entropy_term_reduction,
    check_flux_conservation_symmetry,
    check_sbp_identity,
    check_lgl_quadrature,
    check_tadmor_condition,
)


def run_all(seed: int = 0, trials: int = 1, fault: str | None = None) -> list[CheckResult]:
    """Run every check with a fresh seeded generator per check."""
    if fault is not None and fault not in KNOWN_FAULTS:
        raise ValueError(f"unknown fault {fault!r}; known: {KNOWN_FAULTS}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    results = []
    for index, check in enumerate(CHECKS):
        rng = np.random.default_rng(seed + 1000 * index)
        if check is check_roe_sign_change:
            results.append(check(rng, trials, fault=fault))
        else:
            results.append(check(rng, trials))
    return results
