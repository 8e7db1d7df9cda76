"""Coupling thresholds beta_hat_1, beta_hat_2, their maximum Lambda, the
structural constants 3 sqrt(mu1 mu2) and max(mu1, mu2), and the regime
classification against the energy-ordering statements.

beta_hat is the infimum over the positive subspace of J(phi,phi) divided
by the weighted mass int U^2 phi^2; in eigenbasis coordinates this is the
smallest eigenvalue of a symmetric-definite matrix pencil.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import DegenerateWeight, EmptyPositiveSubspace
from .functional import SystemParams
from .grids import Grid
from .options import SolverOptions
from .scalar import solve_scalar_ground
from .spectral import SpaceSplit, Spectrum, split_space


@dataclass
class Thresholds:
    beta_hat_1: float
    beta_hat_2: float
    lambda_cap: float
    three_sqrt: float
    mu_max: float
    minimizing_modes: dict = field(default_factory=dict)


@dataclass(frozen=True)
class RegimeReport:
    ground_state_exists: bool
    equalities_regime: bool
    semitrivial_ground_hint: bool
    synchronized_regime: bool


def pencil_smallest(jhat_diag: np.ndarray, mass: np.ndarray):
    """Smallest eigenvalue of diag(jhat) c = lam * mass c, mass regularized
    to be positive definite; returns (lam_min, eigvec)."""
    tr = float(np.trace(mass))
    if tr <= 0.0 or not np.isfinite(tr):
        raise DegenerateWeight("weight form has nonpositive trace")
    reg = 1e-14 * tr
    M = mass + reg * np.eye(mass.shape[0])
    vals, vecs = scipy.linalg.eigh(np.diag(jhat_diag), M)
    return float(vals[0]), vecs[:, 0]


def beta_hat(
    g: Grid,
    s: Spectrum,
    split_other: SpaceSplit,
    U: np.ndarray,
    tau_other: float,
) -> float:
    """inf over phi in H+ \\ {0} of J_other(phi,phi) / int U^2 phi^2."""
    if np.max(np.abs(U)) == 0.0:
        raise ValueError("weight field U must be nonzero")
    plus = list(split_other.plus_idx)
    if not plus:
        raise EmptyPositiveSubspace("split has no positive modes")
    Vp = s.eigenvectors[:, plus]
    jhat = s.eigenvalues[plus] - tau_other
    w = g.quad_weight
    M = w * (Vp.T * (U**2)) @ Vp
    lam, _ = pencil_smallest(jhat, M)
    return lam


def compute_thresholds(
    p: SystemParams,
    g: Grid,
    s: Spectrum,
    opts: SolverOptions = SolverOptions(),
) -> Thresholds:
    """Both beta_hat values via the scalar ground states (the double infimum
    runs over the discovered minimal-energy candidate set), plus derived
    constants."""
    split1 = split_space(s, p.tau1)
    split2 = split_space(s, p.tau2)
    g1 = solve_scalar_ground(p.tau1, p.mu1, g, s, opts)
    g2 = solve_scalar_ground(p.tau2, p.mu2, g, s, opts)
    bh1 = min(beta_hat(g, s, split2, U, p.tau2) for U in g1.candidates)
    bh2 = min(beta_hat(g, s, split1, U, p.tau1) for U in g2.candidates)
    return Thresholds(
        beta_hat_1=float(bh1),
        beta_hat_2=float(bh2),
        lambda_cap=float(max(bh1, bh2)),
        three_sqrt=float(3.0 * np.sqrt(p.mu1 * p.mu2)),
        mu_max=float(max(p.mu1, p.mu2)),
        minimizing_modes={
            "scalar_candidates_1": len(g1.candidates),
            "scalar_candidates_2": len(g2.candidates),
        },
    )


def classify_regime(
    p: SystemParams, t: Thresholds, lambda1: float | None = None
) -> RegimeReport:
    """Flags for the parameter regimes of the ordering statements.

    lambda1 is the (discrete) principal eigenvalue; resonance-dependent
    flags are False when it is not supplied.
    """
    if p.beta <= 0.0:
        raise ValueError("beta must be > 0")
    resonant = False
    if lambda1 is not None:
        tol = 1e-9 * max(1.0, abs(lambda1))
        resonant = abs(p.tau1 - lambda1) <= tol and abs(p.tau2 - lambda1) <= tol
    return RegimeReport(
        ground_state_exists=p.beta > t.lambda_cap,
        equalities_regime=resonant and 0.0 < p.beta < t.three_sqrt,
        semitrivial_ground_hint=p.beta <= t.mu_max and p.beta < t.three_sqrt,
        synchronized_regime=p.beta > t.mu_max,
    )
