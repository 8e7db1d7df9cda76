#!/usr/bin/env python3
"""Run the energy-level report across representative coupling regimes and
print the ordering verdicts as a table.

Usage: python3 scripts/verify_orderings.py [--n 64] [--betas 0.5,1,2,4,50]
"""

import argparse

import numpy as np

from nlss import DomainSpec, SystemParams, assemble_report, build_grid, get_spectrum


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=64, help="interior nodes on (0, pi)")
    ap.add_argument("--mu2", type=float, default=1.0)
    ap.add_argument("--betas", default="0.5,1,2,4,50")
    args = ap.parse_args()

    g = build_grid(DomainSpec("interval", (np.pi,), args.n))
    s = get_spectrum(g)
    lam = s.lambda1()

    header = (
        f"{'beta':>8} {'e_est':>12} {'c_prime':>12} {'c_sem':>12} "
        f"{'S_prime':>10} {'hinf*S':>10} {'t11':>14} {'t12':>14} {'t13':>14}"
    )
    print(f"resonant tau1 = tau2 = lambda1 = {lam:.6f}, mu1 = 1, mu2 = {args.mu2:g}")
    print(header)
    for beta in (float(b) for b in args.betas.split(",")):
        p = SystemParams(lam, lam, 1.0, args.mu2, beta)
        rep = assemble_report(p, g, s)
        v = rep.verdicts
        print(
            f"{beta:8g} {rep.e_est:12.6f} {rep.c_prime_est:12.6f} "
            f"{rep.c_sem:12.6f} {rep.S_prime_est:10.4f} {rep.h_inf_times_S:10.4f} "
            f"{v['t11']['status']:>14} {v['t12']['status']:>14} {v['t13']['status']:>14}"
        )
        if rep.partial:
            for key, msg in rep.errors.items():
                print(f"    partial [{key}]: {msg}")


if __name__ == "__main__":
    main()
