"""Internal optimization helpers: small-subspace Newton ascent, damped full
Newton on residual equations, and preconditioned descent on a metric sphere.

These work on plain coefficient / stacked nodal arrays; the public modules
wrap them with domain types.
"""

from __future__ import annotations

import numpy as np

from .errors import NoConvergence


def newton_max_subspace(value, grad, hess, z0, tol=1e-11, max_iter=200):
    """Maximize a smooth function over a low-dimensional coefficient space.

    value/grad/hess take the coefficient vector z; hess returns the dense
    symmetric Hessian.  The Hessian is eigenvalue-shifted to be negative
    definite so steps are ascent directions; an Armijo backtracking line
    search guards each step.  Returns (z, value, converged).
    """
    z = np.asarray(z0, dtype=float).copy()
    val = value(z)
    scale = max(1.0, abs(val))
    for _ in range(max_iter):
        gz = grad(z)
        gnorm = np.linalg.norm(gz)
        if gnorm <= tol * scale:
            return z, val, True
        H = hess(z)
        ew = np.linalg.eigvalsh(H)
        shift = max(0.0, ew[-1]) + 1e-10 * max(1.0, abs(ew).max())
        Hs = H - shift * np.eye(H.shape[0])
        try:
            d = -np.linalg.solve(Hs, gz)
        except np.linalg.LinAlgError:
            d = gz / max(gnorm, 1e-300)
        slope = float(np.dot(gz, d))
        if slope <= 0.0:
            d = gz / max(gnorm, 1e-300)
            slope = gnorm
        # near-singular shifted Hessians give huge steps; cap them
        dnorm = float(np.linalg.norm(d))
        cap = 100.0 * max(1.0, float(np.linalg.norm(z)))
        if dnorm > cap:
            d *= cap / dnorm
            slope *= cap / dnorm
        step = 1.0
        ok = False
        for _bt in range(40):
            if step * slope < 1e-17 * scale:
                break  # improvement below float resolution
            cand = z + step * d
            cval = value(cand)
            if cval >= val + 1e-4 * step * slope:
                z, val = cand, cval
                ok = True
                break
            step *= 0.5
        if not ok:
            # no ascent possible along d; treat as converged to tolerance
            return z, val, gnorm <= max(1e3 * tol, 1e-7) * scale
        scale = max(scale, abs(val))
    return z, val, False


def damped_newton(res_fn, jac_fn, x0, tol=1e-10, max_iter=80):
    """Damped Newton for res(x) = 0 with a dense (symmetric) Jacobian.

    Line search on ||res||^2 with Levenberg-style diagonal damping when the
    Jacobian solve fails or no decrease is found.  Convergence test is on
    the residual inf-norm relative to max(1, ||x||_inf).
    Returns (x, residual_inf_norm, converged).
    """
    x = np.asarray(x0, dtype=float).copy()
    r = res_fn(x)
    rnorm = np.linalg.norm(r, np.inf)
    lam_damp = 0.0
    for _ in range(max_iter):
        if rnorm <= tol * max(1.0, np.linalg.norm(x, np.inf)):
            return x, rnorm, True
        J = jac_fn(x)
        d = None
        lam = lam_damp
        for _tries in range(12):
            try:
                M = J if lam == 0.0 else J + lam * np.eye(J.shape[0])
                d = np.linalg.solve(M, -r)
                if np.all(np.isfinite(d)):
                    break
            except np.linalg.LinAlgError:
                pass
            lam = 1e-6 if lam == 0.0 else lam * 10.0
            d = None
        if d is None:
            return x, rnorm, False
        phi0 = float(np.dot(r, r))
        step = 1.0
        improved = False
        for _bt in range(40):
            cand = x + step * d
            rc = res_fn(cand)
            if float(np.dot(rc, rc)) < phi0 * (1.0 - 1e-4 * step):
                x, r = cand, rc
                rnorm = np.linalg.norm(r, np.inf)
                improved = True
                break
            step *= 0.5
        if improved:
            lam_damp = 0.0
        else:
            lam_damp = 1e-6 if lam_damp == 0.0 else lam_damp * 10.0
            if lam_damp > 1e8:
                return x, rnorm, False
    ok = rnorm <= tol * max(1.0, np.linalg.norm(x, np.inf))
    return x, rnorm, ok


def sphere_descent(fun_grad, metric, a0, tol=1e-8, max_iter=400):
    """Projected gradient descent on the metric unit sphere.

    fun_grad(a, state) -> (value, grad, state): value and raw gradient of a
    0-homogeneous objective at the normalized point; state carries warm
    starts between calls.  metric is the diagonal of the positive definite
    metric; steps are preconditioned by it and iterates re-normalized
    (retraction).  Returns (a, value, state, converged).
    """
    m = np.asarray(metric, dtype=float)

    def normalize(a):
        return a / np.sqrt(float(np.dot(a, m * a)))

    a = normalize(np.asarray(a0, dtype=float))
    state = None
    val, gz, state = fun_grad(a, state)
    step = 1.0
    prev = None  # (a, gz) for the Barzilai-Borwein step estimate
    converged = False
    for _ in range(max_iter):
        d = -gz / m
        slope = float(np.dot(gz, d))
        gscale = np.sqrt(float(np.dot(gz, gz / m)))
        if gscale <= tol * max(1.0, abs(val)):
            converged = True
            break
        if prev is not None:
            da = a - prev[0]
            dg = gz - prev[1]
            denom = float(np.dot(da, dg))
            if denom > 0.0:
                step = float(np.dot(da, m * da)) / denom
        step = min(max(step, 1e-12), 1e6)
        accepted = False
        s = step
        for _bt in range(50):
            cand = normalize(a + s * d)
            cval, cg, cstate = fun_grad(cand, state)
            if cval <= val + 1e-4 * s * slope:
                prev = (a, gz)
                a, val, gz, state = cand, cval, cg, cstate
                step = s
                accepted = True
                break
            s *= 0.5
        if not accepted:
            # step collapsed; gradient is noise-limited
            converged = gscale <= 1e3 * tol * max(1.0, abs(val))
            break
    return a, val, state, converged


def no_convergence(msg, best=None, residual_norm=None):
    raise NoConvergence(msg, best=best, residual_norm=residual_norm)
