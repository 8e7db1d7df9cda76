"""System-level solvers: reduced minimization on the H+ sphere (estimating
the fiber-minimax level c'), multi-seeded Newton for the critical set
(estimating the ground level e from above), and explicit synchronized and
semi-trivial solution constructors.

The ground level is approximated from above by the minimum over a finite
discovered critical set; duplicates are deflated by proximity modulo the
four componentwise sign symmetries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._opt import damped_newton, sphere_descent
from .errors import (
    ConvergedToTilde,
    DegenerateDenominator,
    NoConvergence,
    NoCriticalPointFound,
    NoSynchronizedPair,
)
from .fiber import FiberPoint, fiber_maximize, in_nehari_prime
from .functional import (
    Pair,
    PairSplit,
    SystemParams,
    energy,
    pair_norm,
    project_pair,
    residual,
)
from .grids import Grid, inner_l2, laplacian_matrix
from .options import SolverOptions
from .scalar import ScalarGround, solve_scalar_ground
from .spectral import Spectrum


@dataclass
class CriticalPoint:
    point: Pair
    energy: float
    residual_norm: float
    kind: str  # fully_nontrivial | semitrivial_1 | semitrivial_2 | synchronized | unclassified
    hplus_norm: float


@dataclass
class GroundCandidate:
    best: CriticalPoint
    c_prime_est: float
    e_est: float
    all_found: list[CriticalPoint]
    diagnostics: dict = field(default_factory=dict)


@dataclass
class ReducedResult:
    c_prime_est: float
    minimizer: FiberPoint
    critical_point: CriticalPoint | None
    diagnostics: dict = field(default_factory=dict)


def _system_res(p, g, x):
    return residual(p, g, Pair.from_stack(x)).stack()


def _system_jac(p, g, x):
    n = g.node_count
    u = Pair.from_stack(x)
    L = laplacian_matrix(g)
    eye = np.eye(n)
    J = np.empty((2 * n, 2 * n))
    J[:n, :n] = L - p.tau1 * eye - np.diag(3.0 * p.mu1 * u.u1**2 + p.beta * u.u2**2)
    J[n:, n:] = L - p.tau2 * eye - np.diag(3.0 * p.mu2 * u.u2**2 + p.beta * u.u1**2)
    cross = np.diag(-2.0 * p.beta * u.u1 * u.u2)
    J[:n, n:] = cross
    J[n:, :n] = cross
    return J


def _classify(g, u: Pair) -> str:
    s1 = float(np.max(np.abs(u.u1)))
    s2 = float(np.max(np.abs(u.u2)))
    sup = max(s1, s2)
    if s2 <= 1e-8 * sup:
        return "semitrivial_1"
    if s1 <= 1e-8 * sup:
        return "semitrivial_2"
    n1 = inner_l2(g, u.u1, u.u1)
    n2 = inner_l2(g, u.u2, u.u2)
    cross = inner_l2(g, u.u1, u.u2)
    misalign = 1.0 - cross**2 / (n1 * n2)
    if misalign <= 1e-10:
        return "synchronized"
    return "fully_nontrivial"


def newton_refine(
    p: SystemParams,
    g: Grid,
    split: PairSplit,
    s: Spectrum,
    u0: Pair,
    opts: SolverOptions = SolverOptions(),
) -> CriticalPoint:
    """Damped Newton on the full system residual; rejects Htilde limits."""
    x, rnorm, ok = damped_newton(
        lambda x: _system_res(p, g, x),
        lambda x: _system_jac(p, g, x),
        u0.stack(),
        tol=opts.tol_newton,
        max_iter=2 * opts.max_iter,
    )
    pt = Pair.from_stack(x)
    if not ok:
        raise NoConvergence("Newton did not converge", best=pt, residual_norm=rnorm)
    norm = pair_norm(g, pt)
    hplus = pair_norm(g, project_pair(split, s, pt, "plus"))
    if norm <= 1e-8 or hplus <= 1e-8 * max(1.0, norm):
        raise ConvergedToTilde("Newton converged into Htilde (excluded from K)")
    return CriticalPoint(
        point=pt,
        energy=energy(p, g, pt),
        residual_norm=float(rnorm),
        kind=_classify(g, pt),
        hplus_norm=float(hplus),
    )


def _plus_chart(p, split, s):
    plus1 = list(split.s1.plus_idx)
    plus2 = list(split.s2.plus_idx)
    V1 = s.eigenvectors[:, plus1]
    V2 = s.eigenvectors[:, plus2]
    metric = np.concatenate(
        [s.eigenvalues[plus1] - p.tau1, s.eigenvalues[plus2] - p.tau2]
    )
    return V1, V2, metric, len(plus1)


def minimize_reduced(
    p: SystemParams,
    g: Grid,
    split: PairSplit,
    s: Spectrum,
    opts: SolverOptions = SolverOptions(),
    seed_dirs: list[Pair] | None = None,
) -> ReducedResult:
    """Sphere descent in the J-metric on H+ of the fiber-maximized energy.

    Multi-start over low-mode directions, optional caller-provided
    directions, and random seeds; the best minimizer is polished by full
    Newton and re-validated as a fiber maximizer.
    """
    V1, V2, metric, n1 = _plus_chart(p, split, s)
    w = g.quad_weight
    rng = np.random.default_rng(opts.seed)
    fiber_opts = opts.with_(restarts=4)
    warm_opts = opts.with_(restarts=1)

    def direction(a):
        return Pair(V1 @ a[:n1], V2 @ a[n1:])

    def psi(a, state):
        fo = fiber_opts if state is None else warm_opts
        fp = fiber_maximize(p, g, split, s, direction(a), opts=fo, init=state)
        r = residual(p, g, fp.point)
        grad = fp.t * w * np.concatenate([V1.T @ r.u1, V2.T @ r.u2])
        return fp.value, grad, (fp.t, fp.v_coeffs)

    dim = metric.size
    seeds = []
    if seed_dirs:
        for d in seed_dirs:
            a = w * np.concatenate([V1.T @ d.u1, V2.T @ d.u2])
            if np.linalg.norm(a) > 1e-12:
                seeds.append(a)
    for k in range(min(3, n1)):
        e = np.zeros(dim)
        e[k] = 1.0
        seeds.append(e.copy())
        e2 = np.zeros(dim)
        e2[n1 + k] = 1.0
        seeds.append(e2)
    for sgn in (1.0, -1.0):
        e = np.zeros(dim)
        e[0] = 1.0
        e[n1] = sgn
        seeds.append(e)
    for _ in range(opts.extra_seeds):
        seeds.append(rng.standard_normal(dim))

    # cheap screening pass over all seeds, full-tolerance polish of the best
    screen = []
    for a0 in seeds:
        a, val, state, _ = sphere_descent(
            psi, metric, a0, tol=1e-4, max_iter=min(60, opts.max_iter)
        )
        screen.append((val, a, state))
    screen.sort(key=lambda t: t[0])
    runs = []
    for val0, a0, state0 in screen[:3]:
        a, val, state, conv = sphere_descent(
            psi, metric, a0, tol=opts.tol_sphere, max_iter=opts.max_iter
        )
        runs.append((val, a, state, conv))
    runs.sort(key=lambda t: t[0])
    val, a, state, conv = runs[0]
    fp = fiber_maximize(p, g, split, s, direction(a), opts=fiber_opts, init=state)
    diagnostics = {"seeds": len(seeds), "descent_value": float(fp.value)}
    # Newton polish; keep it only if it stays a fiber maximizer nearby
    cp = None
    c_prime = float(fp.value)
    minimizer = fp
    try:
        cp = newton_refine(p, g, split, s, fp.point, opts=opts)
        rel = abs(cp.energy - fp.value) / max(1.0, abs(fp.value))
        if rel < 1e-4 and in_nehari_prime(
            p, g, split, s, cp.point, tol=1e-7, opts=fiber_opts
        ):
            c_prime = float(cp.energy)
            minimizer = fiber_maximize(p, g, split, s, cp.point, opts=fiber_opts)
            diagnostics["refined"] = True
        else:
            cp = None
    except (NoConvergence, ConvergedToTilde):
        cp = None
    diagnostics.setdefault("refined", False)
    return ReducedResult(c_prime, minimizer, cp, diagnostics)


def synchronized_solution(p: SystemParams, g: Grid, omega: ScalarGround) -> Pair:
    """(alpha1 w, alpha2 w) from the resonant synchronized amplitude formula.

    omega must be a ground state of -Lap u - tau u = u^3 with tau = tau1 =
    tau2; both radicands (mu_j - beta)/(mu1 mu2 - beta^2) must be positive.
    """
    if abs(p.tau1 - p.tau2) > 1e-12 * max(1.0, abs(p.tau1)):
        raise ValueError("synchronized construction needs tau1 = tau2")
    den = p.mu1 * p.mu2 - p.beta**2
    if abs(den) <= 1e-12:
        raise DegenerateDenominator("mu1*mu2 - beta^2 is numerically zero")
    r1 = (p.mu2 - p.beta) / den
    r2 = (p.mu1 - p.beta) / den
    if r1 <= 0.0 or r2 <= 0.0:
        raise NoSynchronizedPair(
            f"radicands {r1:.3g}, {r2:.3g} not both positive"
        )
    a1, a2 = np.sqrt(r1), np.sqrt(r2)
    return Pair(a1 * omega.u, a2 * omega.u)


def semitrivial_solutions(
    p: SystemParams,
    g: Grid,
    s: Spectrum,
    opts: SolverOptions = SolverOptions(),
    split: PairSplit | None = None,
):
    """Both semi-trivial embeddings and the least semi-trivial level c_sem."""
    g1 = solve_scalar_ground(p.tau1, p.mu1, g, s, opts)
    g2 = solve_scalar_ground(p.tau2, p.mu2, g, s, opts)
    zero = np.zeros(g.node_count)
    pt1 = Pair(g1.u.copy(), zero.copy())
    pt2 = Pair(zero.copy(), g2.u.copy())

    def hplus(pt):
        if split is None:
            return float("nan")
        return pair_norm(g, project_pair(split, s, pt, "plus"))

    cp1 = CriticalPoint(
        pt1, energy(p, g, pt1), g1.residual_norm, "semitrivial_1", hplus(pt1)
    )
    cp2 = CriticalPoint(
        pt2, energy(p, g, pt2), g2.residual_norm, "semitrivial_2", hplus(pt2)
    )
    c_sem = min(cp1.energy, cp2.energy)
    return cp1, cp2, float(c_sem)


def _duplicate(g, a: CriticalPoint, b: CriticalPoint, tol=1e-6) -> bool:
    if abs(a.energy - b.energy) > tol * max(1.0, abs(b.energy)):
        return False
    scale = max(
        1.0, np.max(np.abs(b.point.u1)), np.max(np.abs(b.point.u2))
    )
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            d1 = np.max(np.abs(a.point.u1 - s1 * b.point.u1))
            d2 = np.max(np.abs(a.point.u2 - s2 * b.point.u2))
            if max(d1, d2) <= tol * scale:
                return True
    return False


def find_critical_set(
    p: SystemParams,
    g: Grid,
    split: PairSplit,
    s: Spectrum,
    opts: SolverOptions = SolverOptions(),
) -> GroundCandidate:
    """Seeded, deflated Newton search for the nontrivial critical set.

    e is estimated from ABOVE by the minimum energy over the distinct
    converged points; this cannot certify the true infimum over K.
    """
    diagnostics = {"newton_runs": 0, "failures": 0}
    seed_points: list[tuple[str, Pair]] = []
    seed_dirs: list[Pair] = []

    sem1, sem2, c_sem = semitrivial_solutions(p, g, s, opts, split=split)
    seed_points.append(("semitrivial_1", sem1.point))
    seed_points.append(("semitrivial_2", sem2.point))
    seed_dirs.append(project_pair(split, s, sem1.point, "plus"))
    seed_dirs.append(project_pair(split, s, sem2.point, "plus"))

    sync = None
    if abs(p.tau1 - p.tau2) <= 1e-12 * max(1.0, abs(p.tau1)):
        try:
            omega = solve_scalar_ground(p.tau1, 1.0, g, s, opts)
            sync = synchronized_solution(p, g, omega)
            seed_points.append(("synchronized", sync))
            seed_dirs.append(project_pair(split, s, sync, "plus"))
        except (NoSynchronizedPair, DegenerateDenominator, NoConvergence):
            sync = None

    reduced = minimize_reduced(p, g, split, s, opts=opts, seed_dirs=seed_dirs)
    seed_points.insert(0, ("reduced", reduced.minimizer.point))

    rng = np.random.default_rng(opts.seed + 1)
    V1, V2, metric, n1 = _plus_chart(p, split, s)
    fiber_opts = opts.with_(restarts=4)
    for _ in range(opts.extra_seeds):
        a = rng.standard_normal(metric.size)
        a /= np.sqrt(float(np.dot(a, metric * a)))
        d = Pair(V1 @ a[:n1], V2 @ a[n1:])
        try:
            fp = fiber_maximize(p, g, split, s, d, opts=fiber_opts)
            seed_points.append(("random_fiber", fp.point))
        except NoConvergence:
            continue

    found: list[CriticalPoint] = []
    if reduced.critical_point is not None:
        found.append(reduced.critical_point)
    for label, pt in seed_points:
        diagnostics["newton_runs"] += 1
        try:
            cp = newton_refine(p, g, split, s, pt, opts=opts)
        except (NoConvergence, ConvergedToTilde):
            diagnostics["failures"] += 1
            continue
        if not any(_duplicate(g, cp, q) for q in found):
            found.append(cp)
    if not found:
        raise NoCriticalPointFound("no seed converged to an admissible critical point")
    found.sort(key=lambda c: (c.energy, c.kind))
    e_est = found[0].energy
    diagnostics["c_sem"] = c_sem
    diagnostics["reduced"] = reduced.diagnostics
    diagnostics["reduced_minimizer"] = reduced.minimizer.point
    return GroundCandidate(
        best=found[0],
        c_prime_est=float(reduced.c_prime_est),
        e_est=float(e_est),
        all_found=found,
        diagnostics=diagnostics,
    )
