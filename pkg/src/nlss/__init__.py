"""Numerical laboratory for ground states of indefinite coupled cubic
Schrodinger systems with Dirichlet boundary conditions."""

from .config import RunConfig, SweepSpec, load_config, parse_config
from .errors import (
    ConfigError,
    ConvergedToTilde,
    DegenerateDenominator,
    DegenerateWeight,
    EmptyPositiveSubspace,
    NlssError,
    NoConvergence,
    NoCriticalPointFound,
    NoSynchronizedPair,
)
from .fiber import (
    FiberPoint,
    GeometryConstants,
    coercivity_radius,
    fiber_maximize,
    geometry_constants,
    in_nehari,
    in_nehari_prime,
    nehari_scale,
)
from .functional import (
    Pair,
    PairSplit,
    SystemParams,
    big_f,
    energy,
    f_density,
    grad_pairing,
    hessian_apply,
    hessian_bilinear,
    hessian_quadform,
    j_form,
    pair_norm,
    project_pair,
    residual,
    tilde_basis,
)
from .grids import DomainSpec, Grid, build_grid, laplacian_apply
from .levels import (
    EnergyReport,
    assemble_report,
    h_aux,
    h_inf,
    sync_hessian_sign_change,
    synchronized_hessian_value,
)
from .options import SolverOptions
from .scalar import ScalarGround, least_quotient, quartic_shift, solve_scalar_ground
from .spectral import SpaceSplit, Spectrum, eigendecompose, get_spectrum, project, split_space
from .system import (
    CriticalPoint,
    GroundCandidate,
    ReducedResult,
    find_critical_set,
    minimize_reduced,
    newton_refine,
    semitrivial_solutions,
    synchronized_solution,
)
from .thresholds import (
    RegimeReport,
    Thresholds,
    beta_hat,
    classify_regime,
    compute_thresholds,
    pencil_smallest,
)

__version__ = "0.1.0"

__all__ = [
    "RunConfig",
    "SweepSpec",
    "load_config",
    "parse_config",
    "ConfigError",
    "ConvergedToTilde",
    "DegenerateDenominator",
    "DegenerateWeight",
    "EmptyPositiveSubspace",
    "NlssError",
    "NoConvergence",
    "NoCriticalPointFound",
    "NoSynchronizedPair",
    "FiberPoint",
    "GeometryConstants",
    "coercivity_radius",
    "fiber_maximize",
    "geometry_constants",
    "in_nehari",
    "in_nehari_prime",
    "nehari_scale",
    "Pair",
    "PairSplit",
    "SystemParams",
    "big_f",
    "energy",
    "f_density",
    "grad_pairing",
    "hessian_apply",
    "hessian_bilinear",
    "hessian_quadform",
    "j_form",
    "pair_norm",
    "project_pair",
    "residual",
    "tilde_basis",
    "DomainSpec",
    "Grid",
    "build_grid",
    "laplacian_apply",
    "EnergyReport",
    "assemble_report",
    "h_aux",
    "h_inf",
    "sync_hessian_sign_change",
    "synchronized_hessian_value",
    "SolverOptions",
    "ScalarGround",
    "least_quotient",
    "quartic_shift",
    "solve_scalar_ground",
    "SpaceSplit",
    "Spectrum",
    "eigendecompose",
    "get_spectrum",
    "project",
    "split_space",
    "CriticalPoint",
    "GroundCandidate",
    "ReducedResult",
    "find_critical_set",
    "minimize_reduced",
    "newton_refine",
    "semitrivial_solutions",
    "synchronized_solution",
    "RegimeReport",
    "Thresholds",
    "beta_hat",
    "classify_regime",
    "compute_thresholds",
    "pencil_smallest",
]
