from types import SimpleNamespace

import numpy as np
import pytest

from nlss import (
    DomainSpec,
    SystemParams,
    beta_hat,
    build_grid,
    classify_regime,
    compute_thresholds,
    get_spectrum,
    pencil_smallest,
    split_space,
)
from nlss.errors import DegenerateWeight, EmptyPositiveSubspace
from nlss.grids import inner_grad, inner_l2, norm_lp
from nlss.scalar import solve_scalar_ground

PI = np.pi


def rayleigh_oracle(g, s, split_other, U, tau_other, seeds=6, iters=4000):
    """Independent pencil infimum by Barzilai-Borwein descent on the
    Rayleigh quotient over plus-subspace coefficients."""
    plus = list(split_other.plus_idx)
    Vp = s.eigenvectors[:, plus]
    jhat = s.eigenvalues[plus] - tau_other
    w = g.quad_weight
    M = w * (Vp.T * (U**2)) @ Vp

    def qgrad(c):
        num = float(np.dot(c, jhat * c))
        den = float(np.dot(c, M @ c))
        q = num / den
        gr = (2.0 / den) * (jhat * c - q * (M @ c))
        return q, gr

    rng = np.random.default_rng(3)
    best = np.inf
    for _ in range(seeds):
        c = rng.standard_normal(len(plus))
        c /= np.linalg.norm(c)
        q, gr = qgrad(c)
        step, pc, pg = 1e-2, None, None
        for _it in range(iters):
            if pc is not None:
                dc, dg = c - pc, gr - pg
                denom = float(np.dot(dc, dg))
                if denom > 0:
                    step = float(np.dot(dc, dc)) / denom
            step = min(max(step, 1e-12), 1e4)
            pc, pg = c, gr
            c = c - step * gr
            c /= np.linalg.norm(c)
            q, gr = qgrad(c)
            if np.linalg.norm(gr) <= 1e-14 * max(1.0, abs(q)):
                break
        best = min(best, q)
    return best


def test_pencil_diagonal_closed_form():
    jhat = np.array([0.7, 2.3, 5.1, 9.0])
    m = np.array([2.0, 1.0, 0.25, 4.0])
    lam, vec = pencil_smallest(jhat, np.diag(m))
    assert lam == pytest.approx(np.min(jhat / m), rel=1e-12)
    k = int(np.argmin(jhat / m))
    assert abs(vec[k]) == pytest.approx(np.max(np.abs(vec)), rel=1e-10)


def test_pencil_degenerate_weight():
    with pytest.raises(DegenerateWeight):
        pencil_smallest(np.array([1.0, 2.0]), np.zeros((2, 2)))


def test_beta_hat_matches_rayleigh_oracle(g64, s64):
    U = solve_scalar_ground(0.0, 1.0, g64, s64).u
    tau_other = 2.5
    split = split_space(s64, tau_other)
    bh = beta_hat(g64, s64, split, U, tau_other)
    assert bh == pytest.approx(rayleigh_oracle(g64, s64, split, U, tau_other), rel=1e-7)


def test_beta_hat_quadratic_weight_scaling(g32, s32):
    U = solve_scalar_ground(0.0, 1.0, g32, s32).u
    split = split_space(s32, 0.0)
    assert beta_hat(g32, s32, split, 2.0 * U, 0.0) == pytest.approx(
        beta_hat(g32, s32, split, U, 0.0) / 4.0, rel=1e-10
    )


def test_beta_hat_validation(g32, s32):
    split = split_space(s32, 0.0)
    with pytest.raises(ValueError):
        beta_hat(g32, s32, split, np.zeros(g32.node_count), 0.0)
    empty = split_space(s32, s32.eigenvalues[-1] + 1.0)
    with pytest.raises(EmptyPositiveSubspace):
        beta_hat(g32, s32, empty, np.ones(g32.node_count), s32.eigenvalues[-1] + 1.0)


def test_positivity_bound_chain(g32, s32):
    # beta_hat = J(phi*)/int U^2 phi*^2 >= J(phi*)/(||U||_4^2 ||phi*||_4^2) > 0
    U = solve_scalar_ground(0.0, 1.0, g32, s32).u
    tau_other = 2.5
    split = split_space(s32, tau_other)
    plus = list(split.plus_idx)
    Vp = s32.eigenvectors[:, plus]
    jhat = s32.eigenvalues[plus] - tau_other
    M = g32.quad_weight * (Vp.T * (U**2)) @ Vp
    lam, c = pencil_smallest(jhat, M)
    phi = Vp @ c
    jval = inner_grad(g32, phi, phi) - tau_other * inner_l2(g32, phi, phi)
    lower = jval / (norm_lp(g32, U, 4) ** 2 * norm_lp(g32, phi, 4) ** 2)
    assert lam >= lower - 1e-10
    assert lower > 0


def test_subspace_monotonicity(g32, s32):
    # the infimum over a larger coefficient set can only be smaller
    U = solve_scalar_ground(0.0, 1.0, g32, s32).u
    tau_other = 2.5
    split = split_space(s32, tau_other)
    plus = list(split.plus_idx)
    Vp = s32.eigenvectors[:, plus]
    jhat = s32.eigenvalues[plus] - tau_other
    M = g32.quad_weight * (Vp.T * (U**2)) @ Vp
    full, _ = pencil_smallest(jhat, M)
    k = len(plus) // 2
    sub, _ = pencil_smallest(jhat[:k], M[:k, :k])
    assert full <= sub + 1e-12


def test_resonant_symmetric_thresholds(g64, s64):
    lam = s64.lambda1()
    p = SystemParams(lam, lam, 1.0, 1.0, 0.5)
    t = compute_thresholds(p, g64, s64)
    assert t.beta_hat_1 == pytest.approx(t.beta_hat_2, rel=1e-6)
    assert t.lambda_cap == max(t.beta_hat_1, t.beta_hat_2)
    assert t.three_sqrt == pytest.approx(3.0)
    assert t.mu_max == 1.0


def test_threshold_resonant_identity_every_mesh():
    # resonant case: U is a zero mode of the pencil, so beta_hat = mu exactly
    # on every grid, not just in the limit
    for n in (32, 64, 128):
        g = build_grid(DomainSpec("interval", (PI,), n))
        s = get_spectrum(g)
        lam = s.lambda1()
        t = compute_thresholds(SystemParams(lam, lam, 1.0, 2.0, 0.5), g, s)
        assert t.beta_hat_1 == pytest.approx(1.0, abs=1e-9)
        assert t.beta_hat_2 == pytest.approx(2.0, abs=1e-9)


def test_beta_hat_mesh_convergence_order2():
    # fixed analytic weight, no zero-mode degeneracy: plain O(h^2) decay
    vals = []
    for n in (32, 64, 128):
        g = build_grid(DomainSpec("interval", (PI,), n))
        s = get_spectrum(g)
        (x,) = g.coords()
        split = split_space(s, 2.5)
        vals.append(beta_hat(g, s, split, np.sin(x), 2.5))
    d1, d2 = abs(vals[1] - vals[0]), abs(vals[2] - vals[1])
    assert d1 / d2 == pytest.approx(4.0, rel=0.25)


def test_classify_regime(g32, s32):
    lam = s32.lambda1()
    p = SystemParams(lam, lam, 1.0, 1.0, 2.0)
    t = compute_thresholds(p, g32, s32)
    r = classify_regime(p, t, lambda1=lam)
    assert r.ground_state_exists
    assert r.equalities_regime
    assert r.synchronized_regime
    assert not r.semitrivial_ground_hint

    p_small = SystemParams(lam, lam, 1.0, 1.0, 0.5)
    r = classify_regime(p_small, t, lambda1=lam)
    assert not r.ground_state_exists
    assert r.semitrivial_ground_hint

    # resonance flags stay off without lambda1
    r = classify_regime(p, t)
    assert not r.equalities_regime

    with pytest.raises(ValueError):
        classify_regime(SimpleNamespace(beta=-1.0, tau1=lam, tau2=lam), t)


def test_params_reject_bad_beta():
    with pytest.raises(ValueError, match="beta must be > 0"):
        SystemParams(0.0, 0.0, 1.0, 1.0, -1.0)
    with pytest.raises(ValueError):
        SystemParams(0.0, 0.0, 0.0, 1.0, 1.0)
