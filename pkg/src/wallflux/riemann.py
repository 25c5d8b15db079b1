"""Riemann solvers for arbitrary left/right states.

This is the oracle layer: full Lax-Friedrichs, HLL, HLLC and Roe fluxes plus
an iterative exact Riemann solver, all following Toro, "Riemann Solvers and
Numerical Methods for Fluid Dynamics" (3rd ed., Springer, 2009).  Evaluating
any of them on a mirror state pair must reproduce the closed-form wall
pressures in :mod:`wallflux.wall`; the test suite asserts exactly that.

All solvers work in a frame aligned with the interface normal (normal
velocity first, two tangential components carried passively) and rotate the
momentum flux back afterwards.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import euler
from .errors import NoConvergence, NotAMirrorPair, VacuumGenerated
from .euler import ConservativeState, GasModel


class ApproximateSolver(enum.Enum):
    LAX_FRIEDRICHS = "lax_friedrichs"
    HLL = "hll"
    HLLC = "hllc"
    ROE = "roe"


class WaveSpeedMethod(enum.Enum):
    WALL_EXACT = "wall_exact"
    DAVIS = "davis"


@dataclass(frozen=True, eq=False)
class RiemannPair:
    """Left/right conservative states separated by a face with unit normal n
    (pointing from L into R)."""

    uL: ConservativeState
    uR: ConservativeState
    n: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n", euler.require_unit_normal(self.n))


@dataclass(frozen=True)
class StarState:
    """Pressure and contact velocity between the acoustic waves."""

    p_star: float
    u_star: float


def orthonormal_triad(n) -> np.ndarray:
    """Rows: the unit normal and two unit tangents completing a right-handed frame."""
    nvec = euler.require_unit_normal(n)
    helper = np.zeros(3)
    helper[int(np.argmin(np.abs(nvec)))] = 1.0
    t1 = np.cross(nvec, helper)
    t1 /= np.linalg.norm(t1)
    t2 = np.cross(nvec, t1)
    return np.vstack((nvec, t1, t2))


def _rotate_in(u: ConservativeState, triad: np.ndarray) -> np.ndarray:
    """Conservative 5-vector with momentum expressed in the (n, t1, t2) frame."""
    return np.concatenate(([u.rho], triad @ u.mom, [u.E]))


def _rotate_out(flux: np.ndarray, triad: np.ndarray) -> np.ndarray:
    """Map a normal-frame flux back to lab-frame momentum components."""
    out = np.empty(5)
    out[0] = flux[0]
    out[1:4] = triad.T @ flux[1:4]
    out[4] = flux[4]
    return out


def _split(u5: np.ndarray, gamma: float):
    rho = u5[0]
    v = u5[1:4] / rho
    p = (gamma - 1.0) * (u5[4] - 0.5 * rho * np.dot(v, v))
    c = np.sqrt(gamma * p / rho)
    return rho, v, p, c


# ---------------------------------------------------------------------------
# Exact solver (Toro ch. 4)
# ---------------------------------------------------------------------------

def _pressure_function(p, rho_k, p_k, c_k, gamma):
    """f_K(p) and its derivative for one side of the Riemann problem."""
    if p > p_k:
        A = 2.0 / ((gamma + 1.0) * rho_k)
        B = (gamma - 1.0) / (gamma + 1.0) * p_k
        root = np.sqrt(A / (p + B))
        f = (p - p_k) * root
        df = root * (1.0 - 0.5 * (p - p_k) / (p + B))
    else:
        z = (gamma - 1.0) / (2.0 * gamma)
        f = 2.0 * c_k / (gamma - 1.0) * ((p / p_k) ** z - 1.0)
        df = (p / p_k) ** (-0.5 * (gamma + 1.0) / gamma) / (rho_k * c_k)
    return f, df


def exact_riemann_star(
    pair: RiemannPair,
    gas: GasModel,
    tol: float = 1e-13,
    max_iter: int = 100,
) -> StarState:
    """Star pressure and contact velocity by Newton iteration on the pressure
    function, starting from the two-rarefaction approximation.

    Raises :class:`VacuumGenerated` when the states pull apart too strongly
    for a positive-pressure solution, and :class:`NoConvergence` if the
    iteration budget runs out.
    """
    g = gas.gamma
    triad = orthonormal_triad(pair.n)
    rhoL, vL, pL, cL = _split(_rotate_in(pair.uL, triad), g)
    rhoR, vR, pR, cR = _split(_rotate_in(pair.uR, triad), g)
    unL, unR = vL[0], vR[0]

    if 2.0 * (cL + cR) / (g - 1.0) <= unR - unL:
        raise VacuumGenerated(
            f"velocity jump {unR - unL:g} exceeds the pressure positivity bound"
        )

    # Two-rarefaction guess, floored away from zero (robust for all patterns).
    z = (g - 1.0) / (2.0 * g)
    p = ((cL + cR - 0.5 * (g - 1.0) * (unR - unL)) / (cL / pL**z + cR / pR**z)) ** (1.0 / z)
    p = max(p, 1e-12 * min(pL, pR))

    converged = False
    for _ in range(max_iter):
        fL, dL = _pressure_function(p, rhoL, pL, cL, g)
        fR, dR = _pressure_function(p, rhoR, pR, cR, g)
        delta = (fL + fR + (unR - unL)) / (dL + dR)
        p_new = p - delta
        if p_new <= 0.0:
            p_new = 0.5 * p
        if abs(delta) <= tol * p_new:
            p = p_new
            converged = True
            break
        p = p_new
    if not converged:
        raise NoConvergence(f"star pressure iteration did not converge in {max_iter} steps")

    fL, _ = _pressure_function(p, rhoL, pL, cL, g)
    fR, _ = _pressure_function(p, rhoR, pR, cR, g)
    u_star = 0.5 * (unL + unR) + 0.5 * (fR - fL)
    return StarState(p_star=float(p), u_star=float(u_star))


# ---------------------------------------------------------------------------
# Approximate solvers
# ---------------------------------------------------------------------------

def wave_speed_estimates(
    pair: RiemannPair, gas: GasModel, method: WaveSpeedMethod
) -> tuple[float, float]:
    """Left/right wave speed estimates (S_L, S_R).

    WALL_EXACT is only defined for mirror pairs and returns +-( -V_n + c )
    built from the interior state.  DAVIS is the general min/max estimate
    over both sides.
    """
    g = gas.gamma
    triad = orthonormal_triad(pair.n)
    uL5 = _rotate_in(pair.uL, triad)
    uR5 = _rotate_in(pair.uR, triad)
    rhoL, vL, pL, cL = _split(uL5, g)
    rhoR, vR, pR, cR = _split(uR5, g)

    if method is WaveSpeedMethod.DAVIS:
        return (
            float(min(vL[0] - cL, vR[0] - cR)),
            float(max(vL[0] + cL, vR[0] + cR)),
        )

    if method is WaveSpeedMethod.WALL_EXACT:
        scale = max(rhoL, pL, abs(vL[0]) + cL)
        mirror = (
            abs(rhoL - rhoR) <= 1e-12 * scale
            and abs(pL - pR) <= 1e-12 * scale
            and abs(vL[0] + vR[0]) <= 1e-12 * scale
            and np.allclose(vL[1:], vR[1:], rtol=0.0, atol=1e-12 * scale)
        )
        if not mirror:
            raise NotAMirrorPair("wall-exact wave speeds require a mirror state pair")
        s_r = -vL[0] + cL
        return (-s_r, s_r)

    raise ValueError(f"unhandled method {method}")  # pragma: no cover


def _x_flux(u5: np.ndarray, gamma: float) -> np.ndarray:
    return euler.x_flux_of(u5, gamma)


def _lax_friedrichs(uL5, uR5, gamma):
    rhoL, vL, pL, cL = _split(uL5, gamma)
    rhoR, vR, pR, cR = _split(uR5, gamma)
    lam = max(abs(vL[0]) + cL, abs(vR[0]) + cR)
    return 0.5 * (_x_flux(uL5, gamma) + _x_flux(uR5, gamma)) - 0.5 * lam * (uR5 - uL5)


def _hll(uL5, uR5, gamma, speeds=None):
    rhoL, vL, pL, cL = _split(uL5, gamma)
    rhoR, vR, pR, cR = _split(uR5, gamma)
    if speeds is None:
        s_l, s_r = vL[0] - cL, vR[0] + cR
    else:
        s_l, s_r = speeds
    fL = _x_flux(uL5, gamma)
    fR = _x_flux(uR5, gamma)
    if s_l >= 0.0:
        return fL
    if s_r <= 0.0:
        return fR
    return (s_r * fL - s_l * fR + s_l * s_r * (uR5 - uL5)) / (s_r - s_l)


def hllc_contact_speed(pair: RiemannPair, gas: GasModel, speeds=None) -> float:
    """Approximate contact wave speed used by the HLLC solver."""
    g = gas.gamma
    triad = orthonormal_triad(pair.n)
    uL5, uR5 = _rotate_in(pair.uL, triad), _rotate_in(pair.uR, triad)
    rhoL, vL, pL, cL = _split(uL5, g)
    rhoR, vR, pR, cR = _split(uR5, g)
    if speeds is None:
        s_l, s_r = vL[0] - cL, vR[0] + cR
    else:
        s_l, s_r = speeds
    return float(
        (pR - pL + rhoL * vL[0] * (s_l - vL[0]) - rhoR * vR[0] * (s_r - vR[0]))
        / (rhoL * (s_l - vL[0]) - rhoR * (s_r - vR[0]))
    )


def _hllc(uL5, uR5, gamma, speeds=None):
    rhoL, vL, pL, cL = _split(uL5, gamma)
    rhoR, vR, pR, cR = _split(uR5, gamma)
    if speeds is None:
        s_l, s_r = vL[0] - cL, vR[0] + cR
    else:
        s_l, s_r = speeds
    fL = _x_flux(uL5, gamma)
    fR = _x_flux(uR5, gamma)
    if s_l >= 0.0:
        return fL
    if s_r <= 0.0:
        return fR
    s_star = (pR - pL + rhoL * vL[0] * (s_l - vL[0]) - rhoR * vR[0] * (s_r - vR[0])) / (
        rhoL * (s_l - vL[0]) - rhoR * (s_r - vR[0])
    )

    def star_state(u5, rho, v, p, s_k):
        coeff = rho * (s_k - v[0]) / (s_k - s_star)
        out = np.empty(5)
        out[0] = coeff
        out[1] = coeff * s_star
        out[2] = coeff * v[1]
        out[3] = coeff * v[2]
        out[4] = coeff * (
            u5[4] / rho + (s_star - v[0]) * (s_star + p / (rho * (s_k - v[0])))
        )
        return out

    if s_star >= 0.0:
        return fL + s_l * (star_state(uL5, rhoL, vL, pL, s_l) - uL5)
    return fR + s_r * (star_state(uR5, rhoR, vR, pR, s_r) - uR5)


def _roe_averages(uL5, uR5, gamma):
    rhoL, vL, pL, cL = _split(uL5, gamma)
    rhoR, vR, pR, cR = _split(uR5, gamma)
    sL, sR = np.sqrt(rhoL), np.sqrt(rhoR)
    v_t = (sL * vL + sR * vR) / (sL + sR)
    HL = (uL5[4] + pL) / rhoL
    HR = (uR5[4] + pR) / rhoR
    H_t = (sL * HL + sR * HR) / (sL + sR)
    c_t = np.sqrt((gamma - 1.0) * (H_t - 0.5 * np.dot(v_t, v_t)))
    return v_t, H_t, c_t


def roe_mean_state(pair: RiemannPair, gas: GasModel) -> tuple[float, float]:
    """Roe-averaged normal velocity and sound speed for a face pair."""
    triad = orthonormal_triad(pair.n)
    v_t, _, c_t = _roe_averages(_rotate_in(pair.uL, triad), _rotate_in(pair.uR, triad), gas.gamma)
    return float(v_t[0]), float(c_t)


def roe_wave_decomposition(pair: RiemannPair, gas: GasModel):
    """Eigenvalues, wave strengths and right eigenvectors of the Roe matrix.

    Returns (lambdas, alphas, K) with K[:, i] the i-th eigenvector, ordered
    (u-c, u, shear, shear, u+c), all expressed in the face-aligned frame
    (normal velocity first).  Satisfies sum_i alpha_i K^i = uR - uL in that
    frame.
    """
    g = gas.gamma
    triad = orthonormal_triad(pair.n)
    uL5, uR5 = _rotate_in(pair.uL, triad), _rotate_in(pair.uR, triad)
    v_t, H_t, c_t = _roe_averages(uL5, uR5, g)
    u1, u2, u3 = v_t
    du = uR5 - uL5

    # Wave strengths, Toro sec. 11.2: shear waves first, then acoustic.
    a3 = du[2] - u2 * du[0]
    a4 = du[3] - u3 * du[0]
    du5 = du[4] - a3 * u2 - a4 * u3
    a2 = (g - 1.0) / c_t**2 * (du[0] * (H_t - u1 * u1) + u1 * du[1] - du5)
    a1 = 0.5 / c_t * (du[0] * (u1 + c_t) - du[1] - c_t * a2)
    a5 = du[0] - (a1 + a2)

    lambdas = np.array([u1 - c_t, u1, u1, u1, u1 + c_t])
    alphas = np.array([a1, a2, a3, a4, a5])
    K = np.zeros((5, 5))
    q2 = np.dot(v_t, v_t)
    K[:, 0] = [1.0, u1 - c_t, u2, u3, H_t - u1 * c_t]
    K[:, 1] = [1.0, u1, u2, u3, 0.5 * q2]
    K[:, 2] = [0.0, 0.0, 1.0, 0.0, u2]
    K[:, 3] = [0.0, 0.0, 0.0, 1.0, u3]
    K[:, 4] = [1.0, u1 + c_t, u2, u3, H_t + u1 * c_t]
    return lambdas, alphas, K


def _roe(uL5, uR5, gamma):
    v_t, H_t, c_t = _roe_averages(uL5, uR5, gamma)
    u1, u2, u3 = v_t
    du = uR5 - uL5

    a3 = du[2] - u2 * du[0]
    a4 = du[3] - u3 * du[0]
    du5 = du[4] - a3 * u2 - a4 * u3
    a2 = (gamma - 1.0) / c_t**2 * (du[0] * (H_t - u1 * u1) + u1 * du[1] - du5)
    a1 = 0.5 / c_t * (du[0] * (u1 + c_t) - du[1] - c_t * a2)
    a5 = du[0] - (a1 + a2)

    q2 = np.dot(v_t, v_t)
    diss = np.zeros(5)
    diss += a1 * abs(u1 - c_t) * np.array([1.0, u1 - c_t, u2, u3, H_t - u1 * c_t])
    diss += a2 * abs(u1) * np.array([1.0, u1, u2, u3, 0.5 * q2])
    diss += a3 * abs(u1) * np.array([0.0, 0.0, 1.0, 0.0, u2])
    diss += a4 * abs(u1) * np.array([0.0, 0.0, 0.0, 1.0, u3])
    diss += a5 * abs(u1 + c_t) * np.array([1.0, u1 + c_t, u2, u3, H_t + u1 * c_t])
    return 0.5 * (_x_flux(uL5, gamma) + _x_flux(uR5, gamma)) - 0.5 * diss


def approximate_flux(
    solver: ApproximateSolver,
    pair: RiemannPair,
    gas: GasModel,
    wave_speeds: tuple[float, float] | None = None,
) -> np.ndarray:
    """Numerical flux of the chosen approximate solver through the face.

    ``wave_speeds`` overrides the (S_L, S_R) estimates of the HLL and HLLC
    solvers; Lax-Friedrichs and Roe ignore it.  Without an override, HLL and
    HLLC use the one-sided estimates S_L = v_nL - cL, S_R = v_nR + cR.
    """
    g = gas.gamma
    triad = orthonormal_triad(pair.n)
    uL5, uR5 = _rotate_in(pair.uL, triad), _rotate_in(pair.uR, triad)
    if solver is ApproximateSolver.LAX_FRIEDRICHS:
        flux = _lax_friedrichs(uL5, uR5, g)
    elif solver is ApproximateSolver.HLL:
        flux = _hll(uL5, uR5, g, wave_speeds)
    elif solver is ApproximateSolver.HLLC:
        flux = _hllc(uL5, uR5, g, wave_speeds)
    elif solver is ApproximateSolver.ROE:
        flux = _roe(uL5, uR5, g)
    else:  # pragma: no cover - exhaustive enum
        raise ValueError(f"unhandled solver {solver}")
    return _rotate_out(flux, triad)
