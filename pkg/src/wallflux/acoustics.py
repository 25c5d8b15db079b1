"""Symmetrized linearized Euler system at a slip wall.

Works in the symmetrized perturbation variables U = [rho', V, P'] about a
constant mean state whose normal velocity vanishes at the wall.  Provides the
constant coefficient matrices, the reflected external state, the boundary
numerical fluxes (central / exact upwind / local Lax-Friedrichs), and the
scalar energy boundary term

    B_L = U . (F* - 0.5 F.n),

whose sign decides linear stability.  With the mirror state these evaluate in
closed form: 0 (central), cbar^3 Ma_n^2 (upwind) and cbar^2 lambda_max Ma_n^2
(Lax-Friedrichs).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    GammaOutOfRange,
    NonPositiveDensity,
    NonPositivePressure,
    NonzeroMeanNormalVelocity,
)
from .euler import _as_vec3, require_unit_normal


@dataclass(frozen=True)
class MeanState:
    """Constant mean state for the linearization.

    Derived constants: sound speed cbar = sqrt(gamma pbar / rhobar),
    a = sqrt((gamma-1)/gamma) cbar and b = cbar/sqrt(gamma), which satisfy
    a^2 + b^2 = cbar^2.
    """

    rho_bar: float
    v_bar: np.ndarray
    p_bar: float
    gamma: float = 1.4

    def __post_init__(self):
        if not float(self.rho_bar) > 0.0:
            raise NonPositiveDensity(f"rho_bar = {self.rho_bar}")
        if not float(self.p_bar) > 0.0:
            raise NonPositivePressure(f"p_bar = {self.p_bar}")
        if not 1.0 < float(self.gamma) < 3.0:
            raise GammaOutOfRange(f"gamma must lie in (1, 3), got {self.gamma}")
        object.__setattr__(self, "rho_bar", float(self.rho_bar))
        object.__setattr__(self, "v_bar", _as_vec3(self.v_bar))
        object.__setattr__(self, "p_bar", float(self.p_bar))
        object.__setattr__(self, "gamma", float(self.gamma))

    @property
    def c_bar(self) -> float:
        return float(np.sqrt(self.gamma * self.p_bar / self.rho_bar))

    @property
    def a(self) -> float:
        return float(np.sqrt((self.gamma - 1.0) / self.gamma)) * self.c_bar

    @property
    def b(self) -> float:
        return self.c_bar / float(np.sqrt(self.gamma))


@dataclass(frozen=True, eq=False)
class LinearState:
    """Symmetrized perturbation variables [rho', V, P']."""

    rho_p: float
    V: np.ndarray
    P_p: float

    def __post_init__(self):
        object.__setattr__(self, "rho_p", float(self.rho_p))
        object.__setattr__(self, "V", _as_vec3(self.V))
        object.__setattr__(self, "P_p", float(self.P_p))

    def as_vector(self) -> np.ndarray:
        return np.concatenate(([self.rho_p], self.V, [self.P_p]))

    @classmethod
    def from_vector(cls, u) -> "LinearState":
        u = np.asarray(u, dtype=float).reshape(5)
        return cls(u[0], u[1:4], u[4])

    def normal_velocity(self, n) -> float:
        return float(np.dot(self.V, require_unit_normal(n)))


class LinearScheme(enum.Enum):
    CENTRAL = "central"
    UPWIND = "upwind"
    LAX_FRIEDRICHS = "lax_friedrichs"


class DirectVariant(enum.Enum):
    NEUTRAL = "neutral"
    LF_DISSIPATIVE = "lf_dissipative"


def q_combination(state: LinearState, mean: MeanState) -> float:
    """Scalar Q = b rho' + a P' carried by the normal momentum flux."""
    return mean.b * state.rho_p + mean.a * state.P_p


def coefficient_matrix(mean: MeanState, n) -> np.ndarray:
    """Normal coefficient matrix A_n = n1 A1 + n2 A2 + n3 A3 (symmetric)."""
    nvec = require_unit_normal(n)
    v_n = float(np.dot(mean.v_bar, nvec))
    A = np.zeros((5, 5))
    np.fill_diagonal(A, v_n)
    A[0, 1:4] = mean.b * nvec
    A[1:4, 0] = mean.b * nvec
    A[4, 1:4] = mean.a * nvec
    A[1:4, 4] = mean.a * nvec
    return A


def _require_wall_mean(mean: MeanState, nvec: np.ndarray) -> None:
    v_n = float(np.dot(mean.v_bar, nvec))
    if abs(v_n) > 1e-12 * max(1.0, mean.c_bar):
        raise NonzeroMeanNormalVelocity(
            f"mean normal velocity {v_n:g} must vanish at a wall"
        )


def matrix_abs_and_minus(mean: MeanState, n) -> tuple[np.ndarray, np.ndarray]:
    """Return (|A_n|, A_n^-) for a wall-compatible mean state.

    With vanishing mean normal velocity the spectrum of A_n is
    {-cbar, 0, 0, 0, +cbar} and the absolute value has the closed form used
    here; A_n^- = (A_n - |A_n|)/2 is negative semidefinite.
    """
    nvec = require_unit_normal(n)
    _require_wall_mean(mean, nvec)
    a, b, c = mean.a, mean.b, mean.c_bar
    absA = np.zeros((5, 5))
    absA[0, 0] = b * b / c
    absA[0, 4] = absA[4, 0] = a * b / c
    absA[4, 4] = a * a / c
    absA[1:4, 1:4] = c * np.outer(nvec, nvec)
    A_minus = 0.5 * (coefficient_matrix(mean, n) - absA)
    return absA, A_minus


def mirror_state_linear(U: LinearState, n) -> LinearState:
    """External state with the normal velocity negated, rho' and P' copied."""
    nvec = require_unit_normal(n)
    V_n = float(np.dot(U.V, nvec))
    return LinearState(U.rho_p, U.V - 2.0 * V_n * nvec, U.P_p)


def linear_boundary_flux(
    U: LinearState,
    U_ext: LinearState,
    mean: MeanState,
    n,
    scheme: LinearScheme,
    lambda_max: float | None = None,
) -> np.ndarray:
    """Numerical flux F*(U, U_ext) of the linear system at a boundary face.

    Central and upwind use F* = 0.5 (A_n U + A_n U_ext) - (eps/2) |A_n| (U_ext - U)
    with eps = 0, 1; Lax-Friedrichs replaces |A_n| by lambda_max * I, with
    lambda_max defaulting to cbar (the spectral radius at a wall).
    """
    nvec = require_unit_normal(n)
    A = coefficient_matrix(mean, nvec)
    u = U.as_vector()
    u_ext = U_ext.as_vector()
    flux = 0.5 * (A @ u + A @ u_ext)
    if scheme is LinearScheme.UPWIND:
        absA, _ = matrix_abs_and_minus(mean, nvec)
        flux -= 0.5 * absA @ (u_ext - u)
    elif scheme is LinearScheme.LAX_FRIEDRICHS:
        lam = mean.c_bar if lambda_max is None else float(lambda_max)
        flux -= 0.5 * lam * (u_ext - u)
    elif scheme is not LinearScheme.CENTRAL:  # pragma: no cover
        raise ValueError(f"unhandled scheme {scheme}")
    return flux


def boundary_energy_term(U: LinearState, f_star, mean: MeanState, n) -> float:
    """Energy boundary term B_L = U . (F* - 0.5 A_n U)."""
    nvec = require_unit_normal(n)
    u = U.as_vector()
    interior = coefficient_matrix(mean, nvec) @ u
    return float(np.dot(u, np.asarray(f_star, dtype=float).reshape(5) - 0.5 * interior))


def direct_wall_flux_linear(
    U: LinearState,
    mean: MeanState,
    n,
    variant: DirectVariant = DirectVariant.NEUTRAL,
    lambda_max: float | None = None,
) -> np.ndarray:
    """Direct wall flux [0, Q* n, 0] with the normal velocity pinned to zero.

    Neutral keeps Q* = Q (no energy exchange).  The dissipative variant sets
    Q* = Q + lambda_max V_n, which makes V_n (Q* - Q) = cbar^2 lambda_max Ma_n^2,
    matching the mirror-state Lax-Friedrichs dissipation; with the default
    lambda_max = cbar it also reproduces the exact-upwind amount cbar^3 Ma_n^2.
    """
    nvec = require_unit_normal(n)
    _require_wall_mean(mean, nvec)
    q_star = q_combination(U, mean)
    if variant is DirectVariant.LF_DISSIPATIVE:
        lam = mean.c_bar if lambda_max is None else float(lambda_max)
        q_star += lam * float(np.dot(U.V, nvec))
    elif variant is not DirectVariant.NEUTRAL:  # pragma: no cover
        raise ValueError(f"unhandled variant {variant}")
    flux = np.zeros(5)
    flux[1:4] = q_star * nvec
    return flux
