"""Nonlinear Euler state algebra.

Conversions between conservative and primitive variables, physical normal
fluxes, and the entropy pair (entropy density, entropy flux, entropy
variables) for an ideal gas.

Scalar-state functions validate their inputs and raise the typed errors from
:mod:`wallflux.errors`.  The ``*_of`` array helpers at the bottom operate on
``(..., 5)`` stacks of conservative variables without validation; callers
(the DGSEM right-hand side, the Riemann solvers) guarantee positivity.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    GammaOutOfRange,
    NonPositiveDensity,
    NonPositivePressure,
    NonUnitNormal,
)

UNIT_NORMAL_TOL = 1e-12


def _as_vec3(value) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = np.full(3, float(arr))
    return arr.reshape(3)


def require_unit_normal(n) -> np.ndarray:
    """Return ``n`` as a float array, raising unless its length is 1."""
    arr = _as_vec3(n)
    if abs(np.dot(arr, arr) - 1.0) > 2.0 * UNIT_NORMAL_TOL:
        raise NonUnitNormal(f"normal {arr} has length {np.linalg.norm(arr):.15g}")
    return arr


@dataclass(frozen=True)
class GasModel:
    """Ideal gas closure.  gamma must lie in (1, 3)."""

    gamma: float = 1.4

    def __post_init__(self):
        g = float(self.gamma)
        if not 1.0 < g < 3.0:
            raise GammaOutOfRange(f"gamma must lie in (1, 3), got {g}")
        object.__setattr__(self, "gamma", g)


@dataclass(frozen=True, eq=False)
class ConservativeState:
    """Density, momentum density (3-vector) and total energy density."""

    rho: float
    mom: np.ndarray
    E: float

    def __post_init__(self):
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "mom", _as_vec3(self.mom))
        object.__setattr__(self, "E", float(self.E))

    def as_array(self) -> np.ndarray:
        return np.concatenate(([self.rho], self.mom, [self.E]))

    @classmethod
    def from_array(cls, u) -> "ConservativeState":
        u = np.asarray(u, dtype=float).reshape(5)
        return cls(u[0], u[1:4], u[4])


@dataclass(frozen=True, eq=False)
class PrimitiveState:
    """Density, velocity (3-vector) and pressure."""

    rho: float
    v: np.ndarray
    p: float

    def __post_init__(self):
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "v", _as_vec3(self.v))
        object.__setattr__(self, "p", float(self.p))

    def sound_speed(self, gas: GasModel) -> float:
        return float(np.sqrt(gas.gamma * self.p / self.rho))


@dataclass(frozen=True, eq=False)
class EntropyQuantities:
    """Entropy density s, physical entropy sigma, beta = rho/(2p), and the
    entropy variables w (gradient of s with respect to the conservative
    state)."""

    s: float
    sigma: float
    beta: float
    w: np.ndarray


def primitive_from_conservative(u: ConservativeState, gas: GasModel) -> PrimitiveState:
    """Recover (rho, v, p) from the conservative state.

    The ideal-gas closure gives p = (gamma - 1) (E - 0.5 rho |v|^2).
    """
    if not u.rho > 0.0:
        raise NonPositiveDensity(f"rho = {u.rho}")
    v = u.mom / u.rho
    p = (gas.gamma - 1.0) * (u.E - 0.5 * u.rho * float(np.dot(v, v)))
    if not p > 0.0:
        raise NonPositivePressure(f"p = {p} for rho={u.rho}, E={u.E}")
    return PrimitiveState(u.rho, v, p)


def conservative_from_primitive(q: PrimitiveState, gas: GasModel) -> ConservativeState:
    """Inverse of :func:`primitive_from_conservative`."""
    if not q.rho > 0.0:
        raise NonPositiveDensity(f"rho = {q.rho}")
    if not q.p > 0.0:
        raise NonPositivePressure(f"p = {q.p}")
    E = q.p / (gas.gamma - 1.0) + 0.5 * q.rho * float(np.dot(q.v, q.v))
    return ConservativeState(q.rho, q.rho * q.v, E)


def pressure(u: ConservativeState, gas: GasModel) -> float:
    return primitive_from_conservative(u, gas).p


def physical_normal_flux(u: ConservativeState, n, gas: GasModel) -> np.ndarray:
    """Advective flux contracted with a unit normal.

    Returns the 5-vector [rho v_n, rho v_n v + p n, (E + p) v_n].
    """
    nvec = require_unit_normal(n)
    q = primitive_from_conservative(u, gas)
    v_n = float(np.dot(q.v, nvec))
    flux = np.empty(5)
    flux[0] = u.rho * v_n
    flux[1:4] = u.mom * v_n + q.p * nvec
    flux[4] = (u.E + q.p) * v_n
    return flux


def entropy_quantities(u: ConservativeState, gas: GasModel) -> EntropyQuantities:
    """Entropy density s = -rho sigma / (gamma - 1) with sigma = ln p - gamma ln rho,
    plus beta = rho/(2p) and the entropy variables."""
    q = primitive_from_conservative(u, gas)
    sigma = float(np.log(q.p) - gas.gamma * np.log(q.rho))
    s = -q.rho * sigma / (gas.gamma - 1.0)
    beta = q.rho / (2.0 * q.p)
    w = np.empty(5)
    w[0] = (gas.gamma - sigma) / (gas.gamma - 1.0) - beta * float(np.dot(q.v, q.v))
    w[1:4] = 2.0 * beta * q.v
    w[4] = -2.0 * beta
    return EntropyQuantities(s=s, sigma=sigma, beta=beta, w=w)


def entropy_normal_flux(u: ConservativeState, n, gas: GasModel) -> float:
    """Entropy flux through a unit normal: s * v_n."""
    nvec = require_unit_normal(n)
    q = primitive_from_conservative(u, gas)
    return entropy_quantities(u, gas).s * float(np.dot(q.v, nvec))


# ---------------------------------------------------------------------------
# Array kernels on (..., 5) stacks of conservative variables.  No validation.
# ---------------------------------------------------------------------------

def conserved_array(rho, v1, v2, v3, p, gamma) -> np.ndarray:
    """Assemble a (..., 5) conservative stack from primitive arrays."""
    rho = np.asarray(rho, dtype=float)
    v1, v2, v3, p = (np.asarray(x, dtype=float) for x in (v1, v2, v3, p))
    E = p / (gamma - 1.0) + 0.5 * rho * (v1 * v1 + v2 * v2 + v3 * v3)
    return np.stack(np.broadcast_arrays(rho, rho * v1, rho * v2, rho * v3, E), axis=-1)


def pressure_of(U, gamma):
    """p = (gamma-1)(E - |m|^2 / (2 rho)) on a (..., 5) stack."""
    U = np.asarray(U)
    m2 = U[..., 1] ** 2 + U[..., 2] ** 2 + U[..., 3] ** 2
    return (gamma - 1.0) * (U[..., 4] - 0.5 * m2 / U[..., 0])


def sound_speed_of(U, gamma):
    return np.sqrt(gamma * pressure_of(U, gamma) / np.asarray(U)[..., 0])


def x_flux_of(U, gamma) -> np.ndarray:
    """Physical flux in the x direction on a (..., 5) stack."""
    U = np.asarray(U)
    p = pressure_of(U, gamma)
    v1 = U[..., 1] / U[..., 0]
    f = np.empty_like(U)
    f[..., 0] = U[..., 1]
    f[..., 1] = U[..., 1] * v1 + p
    f[..., 2] = U[..., 2] * v1
    f[..., 3] = U[..., 3] * v1
    f[..., 4] = (U[..., 4] + p) * v1
    return f


def entropy_density_of(U, gamma):
    U = np.asarray(U)
    p = pressure_of(U, gamma)
    sigma = np.log(p) - gamma * np.log(U[..., 0])
    return -U[..., 0] * sigma / (gamma - 1.0)


def entropy_variables_of(U, gamma) -> np.ndarray:
    U = np.asarray(U)
    rho = U[..., 0]
    p = pressure_of(U, gamma)
    sigma = np.log(p) - gamma * np.log(rho)
    beta = rho / (2.0 * p)
    v = U[..., 1:4] / rho[..., None]
    w = np.empty_like(U)
    w[..., 0] = (gamma - sigma) / (gamma - 1.0) - beta * np.sum(v * v, axis=-1)
    w[..., 1:4] = 2.0 * beta[..., None] * v
    w[..., 4] = -2.0 * beta
    return w
