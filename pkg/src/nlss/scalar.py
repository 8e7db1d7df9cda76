"""Ground states of the scalar indefinite problem -Lap u - tau u = mu u^3,
the least-energy Rayleigh quotient, and the quartic shift minimizer.

The solver follows the generalized-Nehari reduction: maximize the energy
over each fiber R+ u (+) Htilde, minimize the resulting value over unit
H+ directions, then polish with full nodal Newton.  Multiple seeded
restarts are a heuristic for the (possibly non-unique) ground state set;
all converged candidates are exposed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from ._opt import damped_newton, newton_max_subspace, sphere_descent
from .errors import NoConvergence
from .grids import Grid, inner_grad, inner_l2, laplacian_apply, laplacian_matrix, norm_lp
from .options import SolverOptions
from .spectral import Spectrum, split_space


def scalar_energy(g: Grid, tau: float, mu: float, u: np.ndarray) -> float:
    quad = inner_grad(g, u, u) - tau * inner_l2(g, u, u)
    return 0.5 * quad - 0.25 * mu * float(g.quad_weight * np.sum(u**4))


def scalar_residual(g: Grid, tau: float, mu: float, u: np.ndarray) -> np.ndarray:
    return laplacian_apply(g, u) - tau * u - mu * u**3


def scalar_jacobian(g: Grid, tau: float, mu: float, u: np.ndarray) -> np.ndarray:
    n = g.node_count
    return laplacian_matrix(g) - tau * np.eye(n) - np.diag(3.0 * mu * u**2)


def least_quotient(g: Grid, u: np.ndarray, tau: float) -> float:
    """(||grad u||^2 - tau ||u||^2) / ||u||_{L4}^2."""
    n4 = norm_lp(g, u, 4)
    if n4 == 0.0:
        raise ValueError("least_quotient of the zero field")
    return (inner_grad(g, u, u) - tau * inner_l2(g, u, u)) / n4**2


def quartic_shift(g: Grid, u: np.ndarray, phi1: np.ndarray) -> float:
    """Unique minimizer k of l(k) = (1/4) int (u + k phi1)^4.

    l' is a strictly increasing cubic; its single real root is bracketed by
    doubling and solved by Brent's method.
    """
    denom = inner_l2(g, phi1, phi1)
    proj = inner_l2(g, u, phi1) / denom
    rest = u - proj * phi1
    if np.max(np.abs(rest)) <= 1e-12 * max(1.0, np.max(np.abs(u))):
        raise ValueError("u is proportional to phi1; quartic shift degenerate")
    w = g.quad_weight
    c3 = w * float(np.sum(phi1**4))
    c2 = 3.0 * w * float(np.sum(u * phi1**3))
    c1 = 3.0 * w * float(np.sum(u**2 * phi1**2))
    c0 = w * float(np.sum(u**3 * phi1))

    def lprime(k):
        return ((c3 * k + c2) * k + c1) * k + c0

    b = 1.0 + abs(proj)
    for _ in range(200):
        if lprime(-b) < 0.0 < lprime(b):
            break
        b *= 2.0
    return float(brentq(lprime, -b, b, xtol=1e-14, rtol=8.9e-16))


@dataclass
class ScalarGround:
    """Best scalar critical point found, plus the candidates sharing the
    minimal energy level (the discovered ground state set modulo sign)."""

    u: np.ndarray
    energy: float
    quotient: float
    residual_norm: float
    tau: float
    mu: float
    candidates: list[np.ndarray] = field(default_factory=list)


def _dedup_scalar(cands, g, tol=1e-6):
    out = []
    for u, en in cands:
        dup = False
        for v, ev in out:
            if abs(en - ev) <= tol * max(1.0, abs(ev)):
                d = min(np.max(np.abs(u - v)), np.max(np.abs(u + v)))
                if d <= tol * max(1.0, np.max(np.abs(v))):
                    dup = True
                    break
        if not dup:
            out.append((u, en))
    out.sort(key=lambda t: t[1])
    return out


def solve_scalar_ground(
    tau: float,
    mu: float,
    g: Grid,
    spectrum: Spectrum,
    opts: SolverOptions = SolverOptions(),
) -> ScalarGround:
    """Minimal-energy critical point of the scalar energy over seeded restarts."""
    split = split_space(spectrum, tau)
    plus = list(split.plus_idx)
    tilde = list(split.tilde_idx)
    if not plus:
        raise ValueError("empty positive subspace; tau exceeds the whole spectrum")
    Vp = spectrum.eigenvectors[:, plus]
    metric = spectrum.eigenvalues[plus] - tau
    Vt = spectrum.eigenvectors[:, tilde] if tilde else None
    m = len(tilde)
    w = g.quad_weight
    rng = np.random.default_rng(opts.seed)

    def fiber_max(u, z0):
        """Maximize the energy over R u (+) span(Vt); returns (z, val)."""
        if m == 0:
            jq = inner_grad(g, u, u) - tau * inner_l2(g, u, u)
            q4 = mu * w * float(np.sum(u**4))
            t = np.sqrt(jq / q4)
            return np.array([t]), 0.25 * jq**2 / q4
        D = np.column_stack([u, Vt])

        def value(z):
            return scalar_energy(g, tau, mu, D @ z)

        def grad(z):
            x = D @ z
            return w * (D.T @ scalar_residual(g, tau, mu, x))

        def hess(z):
            x = D @ z
            HD = (
                np.column_stack([laplacian_apply(g, D[:, k]) for k in range(D.shape[1])])
                - tau * D
                - (3.0 * mu * x**2)[:, None] * D
            )
            return w * (D.T @ HD)

        if z0 is None:
            jq = inner_grad(g, u, u) - tau * inner_l2(g, u, u)
            q4 = mu * w * float(np.sum(u**4))
            t0 = np.sqrt(max(jq, 1e-30) / q4)
            z0 = np.concatenate([[t0], np.zeros(m)])
        z, val, _ = newton_max_subspace(value, grad, hess, z0, tol=1e-12)
        if z[0] < 0.0:
            z = -z
        return z, val

    def psi(a, state):
        u = Vp @ a
        z, val = fiber_max(u, state)
        x = z[0] * u + (Vt @ z[1:] if m else 0.0)
        r = scalar_residual(g, tau, mu, x)
        grad_a = z[0] * w * (Vp.T @ r)
        return val, grad_a, z

    # seed directions: low H+ modes plus random coefficient vectors
    seeds = []
    for k in range(min(3, len(plus))):
        e = np.zeros(len(plus))
        e[k] = 1.0
        seeds.append(e)
    while len(seeds) < opts.restarts:
        seeds.append(rng.standard_normal(len(plus)))

    cands = []
    best_fail = None
    for a0 in seeds:
        a, val, state, _ = sphere_descent(
            psi, metric, a0, tol=opts.tol_sphere, max_iter=opts.max_iter
        )
        u_dir = Vp @ a
        z, _ = fiber_max(u_dir, state)
        x0 = z[0] * u_dir + (Vt @ z[1:] if m else 0.0)
        x, rnorm, ok = damped_newton(
            lambda x: scalar_residual(g, tau, mu, x),
            lambda x: scalar_jacobian(g, tau, mu, x),
            x0,
            tol=opts.tol_newton,
        )
        sup = np.max(np.abs(x))
        if not ok:
            best_fail = (x, rnorm)
            continue
        plus_part = Vp @ (w * (Vp.T @ x))
        if sup <= 1e-8 or np.max(np.abs(plus_part)) <= 1e-8 * sup:
            continue
        cands.append((x, scalar_energy(g, tau, mu, x)))
    if not cands:
        raise NoConvergence(
            "no scalar restart converged",
            best=None if best_fail is None else best_fail[0],
            residual_norm=None if best_fail is None else best_fail[1],
        )
    cands = _dedup_scalar(cands, g)
    u_best, en = cands[0]
    if u_best[np.argmax(np.abs(u_best))] < 0:
        u_best = -u_best
    rnorm = float(
        np.max(np.abs(scalar_residual(g, tau, mu, u_best)))
    )
    ground_set = [c for c, e in cands if e <= en + 1e-6 * max(1.0, abs(en))]
    return ScalarGround(
        u=u_best,
        energy=float(en),
        quotient=least_quotient(g, u_best, tau),
        residual_norm=rnorm,
        tau=tau,
        mu=mu,
        candidates=ground_set,
    )
