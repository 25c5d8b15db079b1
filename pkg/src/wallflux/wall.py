"""Slip-wall boundary flux catalog for the nonlinear Euler equations.

A slip wall carries no mass or energy flux; the only free quantity in the
numerical boundary flux [0, P* n, 0] is the wall pressure P*.  Each Riemann
solver family, applied to the mirror state pair, induces a closed-form ratio
P*/P as a function of the normal Mach number.  This module collects those
closed forms together with the entropy boundary term and the per-point
entropy contribution delta_s = (rho c) Ma_n (P*/P - 1).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import euler
from .errors import VacuumLimitExceeded
from .euler import ConservativeState, GasModel

#: Absolute slack on delta_s when classifying a wall flux as entropy stable.
STABLE_TOL = 1e-14


class WallFluxKind(enum.Enum):
    """Wall pressure recipes; values double as CLI / CSV spellings."""

    INTERNAL_PRESSURE = "internal_pressure"
    EXACT_RP = "exact_rp"
    LAX_FRIEDRICHS = "lax_friedrichs"
    HLL = "hll"
    HLLC = "hllc"
    ROE = "roe"
    EC_LF = "ec_lf"
    EC_ROE = "ec_roe"

    @classmethod
    def from_name(cls, name: str) -> "WallFluxKind":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown wall flux kind {name!r}; expected one of {valid}") from None


@dataclass(frozen=True)
class WallPressureResult:
    """Wall pressure evaluation at a single state.

    ``negative_pstar`` flags the (legal) situation where the flux coefficient
    P* goes negative; entropy stability only constrains Ma_n (P*/P - 1).
    """

    ratio: float
    pstar: float
    delta_s: float
    stable: bool
    negative_pstar: bool


def vacuum_limit(gas: GasModel) -> float:
    """Normal Mach number below which the rarefaction branch of the exact
    solution has no positive-pressure solution: -2/(gamma - 1)."""
    return -2.0 / (gas.gamma - 1.0)


def roe_threshold(gas: GasModel) -> float:
    """Normal Mach number where the Roe wall pressure crosses P* = P from
    below: -sqrt(2/(3 - gamma)).  Below it the Roe flux removes a negative
    amount of entropy (supersonic rarefactions)."""
    return -float(np.sqrt(2.0 / (3.0 - gas.gamma)))


def pstar_ratio(kind: WallFluxKind, ma_n, gas: GasModel):
    """Wall pressure ratio P*/P for a given normal Mach number.

    Accepts scalars or arrays.  The exact Riemann branch raises
    :class:`VacuumLimitExceeded` when any sample sits at or below the vacuum
    limit.
    """
    g = gas.gamma
    m = np.asarray(ma_n, dtype=float)

    if kind is WallFluxKind.INTERNAL_PRESSURE:
        out = np.ones_like(m)
    elif kind in (WallFluxKind.HLL, WallFluxKind.HLLC, WallFluxKind.EC_ROE):
        out = 1.0 + g * m
    elif kind is WallFluxKind.LAX_FRIEDRICHS:
        out = 1.0 + g * m * (m + np.abs(m) + 1.0)
    elif kind is WallFluxKind.EC_LF:
        out = 1.0 + g * m * (np.abs(m) + 1.0)
    elif kind is WallFluxKind.ROE:
        out = 1.0 + g * m * (m + np.sqrt(1.0 + 0.5 * (g - 1.0) * m * m))
    elif kind is WallFluxKind.EXACT_RP:
        limit = vacuum_limit(gas)
        if np.any(m <= limit):
            raise VacuumLimitExceeded(
                f"Ma_n <= {limit:g} admits no positive wall pressure (gamma={g:g})"
            )
        q = 0.25 * (g + 1.0) * m
        shock = 1.0 + g * m * (q + np.sqrt(q * q + 1.0))
        rarefaction = (1.0 + 0.5 * (g - 1.0) * m) ** (2.0 * g / (g - 1.0))
        out = np.where(m > 0.0, shock, rarefaction)
    else:  # pragma: no cover - exhaustive enum
        raise ValueError(f"unhandled kind {kind}")

    if np.isscalar(ma_n) or np.ndim(ma_n) == 0:
        return float(out)
    return out


def delta_s(rho, c, ma_n, ratio):
    """Entropy contribution of the wall flux: (rho c) Ma_n (P*/P - 1).

    Non-negative values mean the boundary removes entropy (dissipation);
    zero means the slip condition is met exactly or the flux is neutral.
    """
    return (np.asarray(rho, dtype=float) * c) * np.asarray(ma_n, dtype=float) * (
        np.asarray(ratio, dtype=float) - 1.0
    )


def mirror_state(u: ConservativeState, n) -> tuple[ConservativeState, ConservativeState]:
    """Inner/outer pair for the reflection condition.

    The outer state copies density and total energy and reflects the normal
    momentum, so mass and energy flux cancel at the interface.
    """
    nvec = euler.require_unit_normal(n)
    m_n = float(np.dot(u.mom, nvec))
    reflected = u.mom - 2.0 * m_n * nvec
    return u, ConservativeState(u.rho, reflected, u.E)


def normal_mach(u: ConservativeState, n, gas: GasModel) -> float:
    q = euler.primitive_from_conservative(u, gas)
    nvec = euler.require_unit_normal(n)
    return float(np.dot(q.v, nvec)) / q.sound_speed(gas)


def wall_flux(kind: WallFluxKind, u: ConservativeState, n, gas: GasModel) -> np.ndarray:
    """Numerical wall flux [0, P* n, 0] with P* = P * pstar_ratio(kind, Ma_n)."""
    nvec = euler.require_unit_normal(n)
    q = euler.primitive_from_conservative(u, gas)
    ma = float(np.dot(q.v, nvec)) / q.sound_speed(gas)
    pstar = q.p * pstar_ratio(kind, ma, gas)
    flux = np.zeros(5)
    flux[1:4] = pstar * nvec
    return flux


def wall_pressure(kind: WallFluxKind, u: ConservativeState, n, gas: GasModel) -> WallPressureResult:
    """Evaluate the wall pressure recipe at a state, with stability diagnostics."""
    q = euler.primitive_from_conservative(u, gas)
    nvec = euler.require_unit_normal(n)
    c = q.sound_speed(gas)
    ma = float(np.dot(q.v, nvec)) / c
    ratio = pstar_ratio(kind, ma, gas)
    ds = float(delta_s(q.rho, c, ma, ratio))
    pstar = q.p * ratio
    return WallPressureResult(
        ratio=ratio,
        pstar=pstar,
        delta_s=ds,
        stable=ds >= -STABLE_TOL,
        negative_pstar=pstar < 0.0,
    )


def entropy_boundary_term(u: ConservativeState, f_star, n, gas: GasModel) -> float:
    """Entropy boundary term W . (F* - F.n) + F_ent.n for a numerical flux F*.

    Non-negative values are required for entropy stability.  For a wall flux
    [0, P* n, 0] this reduces exactly to rho V_n (P*/P - 1).
    """
    f_star = np.asarray(f_star, dtype=float).reshape(5)
    w = euler.entropy_quantities(u, gas).w
    f_n = euler.physical_normal_flux(u, n, gas)
    return float(np.dot(w, f_star - f_n)) + euler.entropy_normal_flux(u, n, gas)
