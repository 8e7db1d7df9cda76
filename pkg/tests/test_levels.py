import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlss import (
    SystemParams,
    assemble_report,
    h_aux,
    h_inf,
    sync_hessian_sign_change,
    synchronized_hessian_value,
)
from nlss.scalar import solve_scalar_ground


def test_h_aux_examples():
    assert h_aux(1.0, 1.0, 1.0, 1.0, 1.0) == pytest.approx(1.0, rel=1e-14)
    assert h_aux(4.0, 2.0, 1.0, 1.0, 0.0) == pytest.approx(0.5, rel=1e-14)
    assert h_aux(4.0, 2.0, 1.0, 0.0, 1.0) == pytest.approx(1.0 / np.sqrt(2), rel=1e-14)
    with pytest.raises(ValueError):
        h_aux(1.0, 1.0, 1.0, 0.0, 0.0)


@settings(max_examples=30, deadline=None)
@given(
    t1=st.floats(0.1, 5.0),
    t2=st.floats(0.1, 5.0),
    lam=st.floats(0.1, 10.0),
)
def test_h_aux_scale_invariant(t1, t2, lam):
    a = h_aux(1.5, 0.7, 0.9, t1, t2)
    b = h_aux(1.5, 0.7, 0.9, lam * t1, lam * t2)
    assert b == pytest.approx(a, rel=1e-12)


def test_h_inf_symmetric_interior():
    # mu1 = mu2 = 1, beta = 3: g peaks at the midpoint, max g = 2
    val, x = h_inf(1.0, 1.0, 3.0)
    assert val == pytest.approx(1.0 / np.sqrt(2.0), rel=1e-14)
    assert x == pytest.approx(0.5, rel=1e-12)


def test_h_inf_endpoint_regime():
    # beta below max(mu): the max of g sits at an endpoint, h_inf = 1/sqrt(max mu)
    val, x = h_inf(1.0, 4.0, 2.0)
    assert val == pytest.approx(0.5, rel=1e-14)
    assert x == 0.0
    val, x = h_inf(4.0, 1.0, 2.0)
    assert val == pytest.approx(0.5, rel=1e-14)
    assert x == 1.0


def test_h_inf_continuity_at_mu():
    lo, _ = h_inf(1.0, 1.0, 1.0 - 1e-9)
    hi, _ = h_inf(1.0, 1.0, 1.0 + 1e-9)
    assert lo == pytest.approx(hi, abs=1e-7)
    assert lo == pytest.approx(1.0, abs=1e-7)


def test_h_inf_validation():
    with pytest.raises(ValueError):
        h_inf(0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        h_inf(1.0, 1.0, 0.0)


@settings(max_examples=25, deadline=None)
@given(
    mu1=st.floats(0.2, 5.0),
    mu2=st.floats(0.2, 5.0),
    beta=st.floats(0.1, 8.0),
)
def test_h_inf_matches_grid_scan(mu1, mu2, beta):
    val, _ = h_inf(mu1, mu2, beta)
    ths = np.linspace(0.0, np.pi / 2.0, 2001)
    t1, t2 = np.cos(ths), np.sin(ths)
    rad = mu1 * t1**4 + mu2 * t2**4 + 2.0 * beta * t1**2 * t2**2
    scan = np.min((t1**2 + t2**2) / np.sqrt(rad))
    assert val <= scan + 1e-12
    assert val == pytest.approx(scan, rel=1e-5)


def test_sync_hessian_sign_change_symmetric(g32, s32):
    lam = s32.lambda1()
    omega = solve_scalar_ground(lam, 1.0, g32, s32)
    phi1 = s32.phi1().copy()
    qlo = synchronized_hessian_value(1.0, 1.0, 1.5, lam, g32, omega.u, phi1)
    qhi = synchronized_hessian_value(1.0, 1.0, 50.0, lam, g32, omega.u, phi1)
    assert qlo < 0.0 < qhi
    lo, hi = sync_hessian_sign_change(1.0, 1.0, lam, g32, omega.u, phi1, 1.5, 50.0)
    assert hi - lo <= 0.1
    # symmetric mu: the continuum crossing is at beta = 3 mu
    assert lo <= 3.0 + 0.1 and hi >= 3.0 - 0.1
    with pytest.raises(ValueError):
        sync_hessian_sign_change(1.0, 1.0, lam, g32, omega.u, phi1, 10.0, 50.0)


def test_report_resonant_small_beta(g32, s32):
    lam = s32.lambda1()
    p = SystemParams(lam, lam, 1.0, 1.0, 1.0)
    rep = assemble_report(p, g32, s32)
    assert not rep.partial
    assert rep.verdicts["t12"]["status"] == "pass"
    assert rep.verdicts["t13"]["status"] == "not_applicable"
    assert rep.S_prime_est == pytest.approx(math.sqrt(4.0 * rep.c_prime_est), rel=1e-12)
    lo, hi = rep.c_l_bracket
    assert lo <= hi + 1e-10
    assert rep.c_upper == pytest.approx(min(rep.e_est, rep.c_prime_est))
    assert rep.h_inf == pytest.approx(1.0, rel=1e-12)
    assert rep.S_prime_est == pytest.approx(rep.h_inf_times_S, rel=1e-3)
    assert rep.minimizer_angle <= 1e-3


def test_report_definite_large_beta(g32, s32):
    p = SystemParams(0.0, 0.0, 1.0, 1.0, 4.0)
    rep = assemble_report(p, g32, s32)
    assert not rep.partial
    assert rep.verdicts["t11"]["status"] == "pass"
    assert rep.verdicts["t12"]["status"] == "not_applicable"
    # non-resonant: no scalar quotient branch
    assert math.isnan(rep.S)
    assert rep.c_prime_est < rep.c_sem


def test_report_verdict_gating(g32, s32):
    lam = s32.lambda1()
    # beta below Lambda: the strict ordering statement does not apply
    p = SystemParams(lam, lam, 1.0, 1.0, 0.5)
    rep = assemble_report(p, g32, s32)
    assert rep.verdicts["t11"]["status"] == "not_applicable"
    assert rep.verdicts["t11"]["note"] == "beta <= Lambda"
