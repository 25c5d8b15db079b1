"""1D flux-differencing DGSEM for the compressible Euler equations.

Nodal collocation at Legendre-Gauss-Lobatto points, two-point
entropy-conservative volume fluxes, selectable interface coupling (EC or EC
plus scalar Lax-Friedrichs dissipation) and the wall flux catalog from
:mod:`wallflux.wall` at the domain ends.  Time integration is the three-stage
SSP Runge-Kutta scheme.

The solver keeps a per-step entropy budget: total entropy, its semi-discrete
rate (entropy variables contracted with the right-hand side), the entropy
removed at each wall, and the defect between the two.  With an
entropy-conservative interior the defect is round-off; with interface
dissipation it is non-positive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from pathlib import Path

import numpy as np

from . import euler, wall
from .errors import BlowUp, ConfigParseError, InvalidState, VacuumLimitExceeded
from .wall import WallFluxKind

# ---------------------------------------------------------------------------
# Reference element operators
# ---------------------------------------------------------------------------


def lgl_nodes_weights(N: int) -> tuple[np.ndarray, np.ndarray]:
    """Legendre-Gauss-Lobatto nodes and quadrature weights on [-1, 1].

    Interior nodes are the roots of P_N', located by companion-matrix roots
    and polished with Newton; weights are 2 / (N (N+1) P_N(x)^2).
    """
    if N < 1:
        raise ValueError("polynomial degree must be at least 1")
    if N == 1:
        return np.array([-1.0, 1.0]), np.array([1.0, 1.0])

    from numpy.polynomial import legendre as L

    cN = np.zeros(N + 1)
    cN[N] = 1.0
    dc = L.legder(cN)
    interior = np.real(L.legroots(dc))
    d2c = L.legder(dc)
    for _ in range(3):
        interior -= L.legval(interior, dc) / L.legval(interior, d2c)
    nodes = np.concatenate(([-1.0], np.sort(interior), [1.0]))
    nodes = 0.5 * (nodes - nodes[::-1])  # enforce exact symmetry
    weights = 2.0 / (N * (N + 1) * L.legval(nodes, cN) ** 2)
    return nodes, weights


def derivative_matrix(N: int) -> np.ndarray:
    """Collocation derivative matrix on the LGL nodes (barycentric form).

    Together with the diagonal mass matrix M = diag(weights) it satisfies the
    summation-by-parts identity M D + (M D)^T = diag(-1, 0, ..., 0, 1).
    """
    x, _ = lgl_nodes_weights(N)
    n = N + 1
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    bary = 1.0 / np.prod(diff, axis=1)
    D = (bary[None, :] / bary[:, None]) / diff
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -np.sum(D, axis=1))
    return D


# ---------------------------------------------------------------------------
# Entropy-conservative two-point flux
# ---------------------------------------------------------------------------


def log_mean(a, b):
    """Logarithmic mean (b - a)/(ln b - ln a) with a series guard near a = b.

    Arguments are ordered internally, so the result is bitwise symmetric.
    """
    lo = np.minimum(a, b).astype(float)
    hi = np.maximum(a, b).astype(float)
    f = (hi - lo) / (hi + lo)
    u = f * f
    series = 0.5 * (lo + hi) / (1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u / 7.0)))
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = (hi - lo) / np.log(hi / lo)
    # u < 2.5e-9 corresponds to a relative difference of about 1e-4
    return np.where(u < 2.5e-9, series, direct)


def ec_volume_flux(uL, uR, gamma: float) -> np.ndarray:
    """Entropy-conservative two-point flux in the x direction.

    Logarithmic-mean based (kinetic-energy preserving variant); symmetric in
    its arguments, consistent, and satisfies the entropy shuffle condition
    (wR - wL) . F = psi_R - psi_L with flux potential psi = rho v1.
    Accepts broadcastable (..., 5) stacks.
    """
    uL = np.asarray(uL, dtype=float)
    uR = np.asarray(uR, dtype=float)
    rhoL, rhoR = uL[..., 0], uR[..., 0]
    vL = uL[..., 1:4] / rhoL[..., None]
    vR = uR[..., 1:4] / rhoR[..., None]
    pL = euler.pressure_of(uL, gamma)
    pR = euler.pressure_of(uR, gamma)
    betaL = rhoL / (2.0 * pL)
    betaR = rhoR / (2.0 * pR)

    rho_ln = log_mean(rhoL, rhoR)
    beta_ln = log_mean(betaL, betaR)
    v_avg = 0.5 * (vL + vR)
    v2_avg = 0.5 * (np.sum(vL * vL, axis=-1) + np.sum(vR * vR, axis=-1))
    p_hat = 0.5 * (rhoL + rhoR) / (betaL + betaR)

    shape = np.broadcast_shapes(uL.shape, uR.shape)
    flux = np.empty(shape)
    flux[..., 0] = rho_ln * v_avg[..., 0]
    flux[..., 1] = v_avg[..., 0] * flux[..., 0] + p_hat
    flux[..., 2] = v_avg[..., 1] * flux[..., 0]
    flux[..., 3] = v_avg[..., 2] * flux[..., 0]
    flux[..., 4] = (0.5 / ((gamma - 1.0) * beta_ln) - 0.5 * v2_avg) * flux[..., 0] + (
        v_avg[..., 0] * flux[..., 1]
        + v_avg[..., 1] * flux[..., 2]
        + v_avg[..., 2] * flux[..., 3]
    )
    return flux


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


class InterfaceFlux(Enum):
    EC = "ec"
    EC_PLUS_LF = "ec_plus_lf"


@dataclass
class SolverConfig:
    num_elements: int = 8
    poly_degree: int = 3
    gamma: float = 1.4
    cfl: float = 0.5
    end_time: float = 2.0
    wall_left: WallFluxKind = WallFluxKind.LAX_FRIEDRICHS
    wall_right: WallFluxKind = WallFluxKind.LAX_FRIEDRICHS
    interface_flux: InterfaceFlux = InterfaceFlux.EC_PLUS_LF
    initial_condition: str = "uniform"
    ic_params: dict = dataclass_field(default_factory=dict)
    domain_length: float = 1.0
    periodic: bool = False

    def __post_init__(self):
        if self.num_elements < 1:
            raise ConfigParseError("num_elements must be at least 1")
        if self.poly_degree < 1:
            raise ConfigParseError("poly_degree must be at least 1")
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigParseError("cfl must lie in (0, 1]")
        if not self.end_time > 0.0:
            raise ConfigParseError("end_time must be positive")
        if not self.domain_length > 0.0:
            raise ConfigParseError("domain_length must be positive")


_CONFIG_BOOL = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def config_from_file(path) -> SolverConfig:
    """Parse a plain-text key=value config (one pair per line, # comments)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigParseError(f"cannot read config file {path}: {exc}") from exc

    kwargs: dict = {}
    ic_params: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            if key in ("num_elements", "poly_degree"):
                kwargs[key] = int(value)
            elif key in ("gamma", "cfl", "end_time", "domain_length"):
                kwargs[key] = float(value)
            elif key in ("wall_left", "wall_right"):
                kwargs[key] = WallFluxKind.from_name(value)
            elif key == "interface_flux":
                kwargs[key] = InterfaceFlux(value.lower())
            elif key == "initial_condition":
                kwargs[key] = value.lower()
            elif key == "periodic":
                kwargs[key] = _CONFIG_BOOL[value.lower()]
            elif key.startswith("ic_"):
                ic_params[key[3:]] = float(value)
            else:
                raise ConfigParseError(f"{path}:{lineno}: unknown key {key!r}")
        except (ValueError, KeyError) as exc:
            raise ConfigParseError(f"{path}:{lineno}: bad value for {key!r}: {value!r}") from exc
    return SolverConfig(ic_params=ic_params, **kwargs)


# ---------------------------------------------------------------------------
# Fields and budgets
# ---------------------------------------------------------------------------


@dataclass
class SolutionField:
    """Nodal conservative coefficients: shape (num_elements, N+1, 5)."""

    u: np.ndarray
    dx: float
    t: float = 0.0


@dataclass
class EntropyBudget:
    """Per-step entropy accounting time series.

    ``boundary_left``/``boundary_right`` hold the entropy removed at each
    wall (the wall entropy term; non-negative for entropy-stable kinds), and
    ``defect = dSdt_discrete + boundary_left + boundary_right`` isolates the
    interior contribution (round-off for EC coupling, non-positive with
    interface dissipation).
    """

    t: np.ndarray
    S_total: np.ndarray
    dSdt_discrete: np.ndarray
    boundary_left: np.ndarray
    boundary_right: np.ndarray
    defect: np.ndarray

    COLUMNS = ("t", "S_total", "dSdt_discrete", "boundary_left", "boundary_right", "defect")

    @classmethod
    def from_rows(cls, rows) -> "EntropyBudget":
        data = np.array(rows, dtype=float).reshape(-1, 6)
        return cls(*(data[:, i].copy() for i in range(6)))

    def write_csv(self, path) -> None:
        lines = [",".join(self.COLUMNS)]
        for i in range(len(self.t)):
            lines.append(
                ",".join(
                    f"{getattr(self, col)[i]:.17g}" for col in self.COLUMNS
                )
            )
        Path(path).write_text("\n".join(lines) + "\n", newline="\n")


def initial_field(config: SolverConfig) -> SolutionField:
    """Evaluate the configured initial condition at the LGL nodes."""
    nodes, _ = lgl_nodes_weights(config.poly_degree)
    dx = config.domain_length / config.num_elements
    left = dx * np.arange(config.num_elements)
    x = left[:, None] + 0.5 * dx * (nodes[None, :] + 1.0)

    params = dict(config.ic_params)
    name = config.initial_condition
    if name == "uniform":
        rho0 = params.pop("rho", 1.0)
        p0 = params.pop("p", 1.0)
        mach = params.pop("mach", 0.0)
        c0 = math.sqrt(config.gamma * p0 / rho0)
        rho = np.full_like(x, rho0)
        p = np.full_like(x, p0)
        v1 = np.full_like(x, mach * c0)
    elif name == "pulse":
        rho0 = params.pop("rho", 1.0)
        p0 = params.pop("p", 1.0)
        amp = params.pop("amplitude", 0.2)
        width = params.pop("width", 0.1)
        center = params.pop("center", 0.5 * config.domain_length)
        bump = amp * np.exp(-(((x - center) / width) ** 2))
        rho = rho0 * (1.0 + bump)
        p = p0 * (1.0 + bump)
        v1 = np.zeros_like(x)
    else:
        raise ConfigParseError(f"unknown initial condition {name!r}")
    if params:
        raise ConfigParseError(f"unused initial-condition parameters: {sorted(params)}")

    zeros = np.zeros_like(x)
    u = euler.conserved_array(rho, v1, zeros, zeros, p, config.gamma)
    return SolutionField(u=u, dx=dx, t=0.0)


def _invalid(reason: str, element: int, node: int) -> InvalidState:
    exc = InvalidState(f"{reason} at element {element}, node {node}")
    exc.element = element
    exc.node = node
    return exc


def validate_field(u: np.ndarray, gamma: float) -> None:
    """Raise :class:`InvalidState` when any node is non-finite or non-physical."""
    if not np.all(np.isfinite(u)):
        bad = np.argwhere(~np.isfinite(u))[0]
        raise _invalid("non-finite value", int(bad[0]), int(bad[1]))
    rho = u[..., 0]
    if np.any(rho <= 0.0):
        bad = np.argwhere(rho <= 0.0)[0]
        raise _invalid("non-positive density", int(bad[0]), int(bad[1]))
    p = euler.pressure_of(u, gamma)
    if np.any(p <= 0.0):
        bad = np.argwhere(p <= 0.0)[0]
        raise _invalid("non-positive pressure", int(bad[0]), int(bad[1]))


# ---------------------------------------------------------------------------
# Discretization
# ---------------------------------------------------------------------------


class Discretization:
    """Precomputed operators and flux assembly for a given configuration."""

    def __init__(self, config: SolverConfig):
        self.config = config
        self.gamma = config.gamma
        self.N = config.poly_degree
        self.nodes, self.weights = lgl_nodes_weights(self.N)
        self.D = derivative_matrix(self.N)
        self.dx = config.domain_length / config.num_elements

    # -- wall handling ----------------------------------------------------

    def _wall_star_pressure(self, u_node: np.ndarray, kind: WallFluxKind, outward: float) -> float:
        """P* at a wall node; ``outward`` is the sign of the outward x normal."""
        rho = u_node[0]
        p = euler.pressure_of(u_node, self.gamma)
        c = math.sqrt(self.gamma * p / rho)
        ma = outward * (u_node[1] / rho) / c
        return p * wall.pstar_ratio(kind, ma, euler.GasModel(self.gamma))

    def wall_entropy_terms(self, u: np.ndarray) -> tuple[float, float]:
        """Entropy removed at the left and right walls (entropy boundary terms).

        Evaluated by contraction with the entropy variables, exactly mirroring
        what the semi-discrete entropy rate sees.  Zero for periodic runs.
        """
        if self.config.periodic:
            return 0.0, 0.0
        gamma = self.gamma
        out = []
        for u_node, kind, outward in (
            (u[0, 0], self.config.wall_left, -1.0),
            (u[-1, -1], self.config.wall_right, 1.0),
        ):
            pstar = self._wall_star_pressure(u_node, kind, outward)
            f_star_out = np.zeros(5)
            f_star_out[1] = pstar * outward
            f_out = outward * euler.x_flux_of(u_node, gamma)
            w = euler.entropy_variables_of(u_node, gamma)
            s = euler.entropy_density_of(u_node, gamma)
            f_ent_out = outward * s * (u_node[1] / u_node[0])
            out.append(float(np.dot(w, f_star_out - f_out)) + f_ent_out)
        return out[0], out[1]

    # -- semi-discrete right-hand side -------------------------------------

    def rhs(self, u: np.ndarray) -> np.ndarray:
        gamma = self.gamma
        cfg = self.config

        fm = ec_volume_flux(u[:, :, None, :], u[:, None, :, :], gamma)
        out = -(2.0 / self.dx) * 2.0 * np.einsum("jk,ejkc->ejc", self.D, fm)

        fx = euler.x_flux_of(u, gamma)

        # interior interfaces (and the wrap-around pair for periodic runs)
        u_minus = u[:-1, -1, :]
        u_plus = u[1:, 0, :]
        if cfg.periodic:
            u_minus = np.vstack((u_minus, u[-1:, -1, :]))
            u_plus = np.vstack((u_plus, u[:1, 0, :]))
        f_iface = ec_volume_flux(u_minus, u_plus, gamma)
        if cfg.interface_flux is InterfaceFlux.EC_PLUS_LF:
            c_m = euler.sound_speed_of(u_minus, gamma)
            c_p = euler.sound_speed_of(u_plus, gamma)
            lam = np.maximum(
                np.abs(u_minus[:, 1] / u_minus[:, 0]) + c_m,
                np.abs(u_plus[:, 1] / u_plus[:, 0]) + c_p,
            )
            f_iface = f_iface - 0.5 * lam[:, None] * (u_plus - u_minus)

        K = cfg.num_elements
        right_flux = np.empty((K, 5))
        left_flux = np.empty((K, 5))
        if cfg.periodic:
            right_flux[:] = f_iface
            left_flux[0] = f_iface[-1]
            left_flux[1:] = f_iface[:-1]
        else:
            right_flux[:-1] = f_iface
            left_flux[1:] = f_iface
            p_left = self._wall_star_pressure(u[0, 0], cfg.wall_left, -1.0)
            p_right = self._wall_star_pressure(u[-1, -1], cfg.wall_right, 1.0)
            left_flux[0] = 0.0
            left_flux[0][1] = p_left
            right_flux[-1] = 0.0
            right_flux[-1][1] = p_right

        scale = 2.0 / self.dx
        out[:, -1, :] -= (scale / self.weights[-1]) * (right_flux - fx[:, -1, :])
        out[:, 0, :] += (scale / self.weights[0]) * (left_flux - fx[:, 0, :])
        return out

    # -- entropy accounting -------------------------------------------------

    def total_entropy(self, u: np.ndarray) -> float:
        s = euler.entropy_density_of(u, self.gamma)
        return float(0.5 * self.dx * np.sum(s * self.weights[None, :]))

    def entropy_rate(self, u: np.ndarray, dudt: np.ndarray) -> float:
        w = euler.entropy_variables_of(u, self.gamma)
        return float(
            0.5 * self.dx * np.sum(self.weights[None, :, None] * w * dudt)
        )

    def budget_row(self, t: float, u: np.ndarray, dudt: np.ndarray):
        b_l, b_r = self.wall_entropy_terms(u)
        rate = self.entropy_rate(u, dudt)
        return (t, self.total_entropy(u), rate, b_l, b_r, rate + b_l + b_r)

    def stable_dt(self, u: np.ndarray) -> float:
        v1 = np.abs(u[..., 1] / u[..., 0])
        lam = float(np.max(v1 + euler.sound_speed_of(u, self.gamma)))
        return self.config.cfl * self.dx / ((self.N + 1) * lam)


def dg_rhs(field: SolutionField, config: SolverConfig) -> np.ndarray:
    """Semi-discrete time derivative of the nodal coefficients."""
    validate_field(field.u, config.gamma)
    return Discretization(config).rhs(field.u)


# ---------------------------------------------------------------------------
# Time integration
# ---------------------------------------------------------------------------


def run_simulation(config: SolverConfig) -> tuple[EntropyBudget, SolutionField]:
    """Integrate to ``config.end_time`` with SSP-RK3 at a fixed CFL-limited dt.

    Returns the entropy budget (one row per step start plus the final state)
    and the final field.  Raises :class:`BlowUp` carrying the partial budget
    when the state becomes invalid.
    """
    disc = Discretization(config)
    field = initial_field(config)
    u = field.u

    rows: list = []

    def checked_rhs(state: np.ndarray, t: float) -> np.ndarray:
        try:
            validate_field(state, config.gamma)
            return disc.rhs(state)
        except (InvalidState, VacuumLimitExceeded) as exc:
            raise BlowUp(
                f"simulation blew up at t = {t:.6g}: {exc}",
                time=t,
                element=getattr(exc, "element", None),
                node=getattr(exc, "node", None),
                budget=EntropyBudget.from_rows(rows),
            ) from exc

    k1 = checked_rhs(u, 0.0)
    dt = disc.stable_dt(u)
    nsteps = max(1, math.ceil(config.end_time / dt))
    dt = config.end_time / nsteps

    t = 0.0
    for step in range(nsteps):
        rows.append(disc.budget_row(t, u, k1))
        u1 = u + dt * k1
        u2 = 0.75 * u + 0.25 * (u1 + dt * checked_rhs(u1, t))
        u = u / 3.0 + (2.0 / 3.0) * (u2 + dt * checked_rhs(u2, t))
        t = (step + 1) * dt
        k1 = checked_rhs(u, t)

    rows.append(disc.budget_row(t, u, k1))
    return EntropyBudget.from_rows(rows), SolutionField(u=u, dx=disc.dx, t=t)
