"""Slip-wall boundary flux procedures for the compressible Euler equations.

Closed-form wall pressures for the common Riemann-solver families, linear
(energy) and nonlinear (entropy) boundary stability terms, an independent
Riemann-solver oracle layer, and a 1D flux-differencing DGSEM harness with
per-step entropy budgets.
"""

from .acoustics import (
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
from .dgsem import (
    EntropyBudget,
    InterfaceFlux,
    SolutionField,
    SolverConfig,
    config_from_file,
    derivative_matrix,
    dg_rhs,
    ec_volume_flux,
    initial_field,
    lgl_nodes_weights,
    run_simulation,
)
from .euler import (
    ConservativeState,
    EntropyQuantities,
    GasModel,
    PrimitiveState,
    conservative_from_primitive,
    entropy_normal_flux,
    entropy_quantities,
    physical_normal_flux,
    pressure,
    primitive_from_conservative,
)
from .riemann import (
    ApproximateSolver,
    RiemannPair,
    StarState,
    WaveSpeedMethod,
    approximate_flux,
    exact_riemann_star,
    wave_speed_estimates,
)
from .sweep import SweepSpec, run_sweep, write_sweep_csv, write_sweep_svg
from .wall import (
    WallFluxKind,
    WallPressureResult,
    delta_s,
    entropy_boundary_term,
    mirror_state,
    pstar_ratio,
    roe_threshold,
    vacuum_limit,
    wall_flux,
    wall_pressure,
)

__version__ = "0.1.0"
