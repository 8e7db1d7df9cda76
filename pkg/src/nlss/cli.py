"""Command-line front end: solve, sweep, thresholds.

Artifacts: report.json and report.csv for single solves, sweep.csv and
sweep.svg for sweeps.  All numeric cells use 17 significant digits so a
rerun with the same seed is byte-identical; NaN becomes an empty CSV cell
and a JSON null.  NLSS_THREADS caps the sweep worker pool.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import json
import math
import os
import sys

from .config import RunConfig, SweepSpec, load_config
from .errors import ConfigError, NlssError
from .functional import SystemParams
from .grids import build_grid
from .levels import EnergyReport, assemble_report
from .spectral import get_spectrum
from .thresholds import compute_thresholds

CSV_HEADER = (
    "param,beta,mu1,mu2,tau1,tau2,e_est,c_prime,c_sem,beta_hat1,beta_hat2,"
    "S,S_prime,h_inf,regime,verdict_t11,verdict_t12,verdict_t13"
)


def _num(x) -> str:
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return ""
    return f"{x:.17g}"


def _jsonify(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return _jsonify(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if hasattr(obj, "tolist"):
        return _jsonify(obj.tolist())
    return obj


def _regime_label(rep: EnergyReport) -> str:
    if rep.regime is None:
        return ""
    flags = []
    if rep.regime.ground_state_exists:
        flags.append("exists")
    if rep.regime.equalities_regime:
        flags.append("equalities")
    if rep.regime.semitrivial_ground_hint:
        flags.append("semitrivial_hint")
    if rep.regime.synchronized_regime:
        flags.append("synchronized")
    return "+".join(flags) if flags else "none"


def _csv_row(param, rep: EnergyReport) -> str:
    p = rep.params
    th = rep.thresholds
    cells = [
        _num(param),
        _num(p.beta),
        _num(p.mu1),
        _num(p.mu2),
        _num(p.tau1),
        _num(p.tau2),
        _num(rep.e_est),
        _num(rep.c_prime_est),
        _num(rep.c_sem),
        _num(th.beta_hat_1 if th else None),
        _num(th.beta_hat_2 if th else None),
        _num(rep.S),
        _num(rep.S_prime_est),
        _num(rep.h_inf),
        _regime_label(rep),
        rep.verdicts.get("t11", {}).get("status", ""),
        rep.verdicts.get("t12", {}).get("status", ""),
        rep.verdicts.get("t13", {}).get("status", ""),
    ]
    return ",".join(cells)


def _nan_row(param, params: SystemParams) -> str:
    cells = [
        _num(param),
        _num(params.beta),
        _num(params.mu1),
        _num(params.mu2),
        _num(params.tau1),
        _num(params.tau2),
    ] + [""] * 12
    return ",".join(cells)


def _prepare(cfg: RunConfig):
    """Grid, spectrum, and the effective params after tau snapping."""
    g = build_grid(cfg.domain)
    s = get_spectrum(g)
    p = cfg.params
    if cfg.tau_mode == "lambda1":
        lam1 = s.lambda1()
        p = SystemParams(lam1, lam1, p.mu1, p.mu2, p.beta)
    return g, s, p


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def cmd_solve(config_path: str, out_dir: str | None = None) -> int:
    cfg = load_config(config_path)
    out = out_dir or cfg.out_dir
    os.makedirs(out, exist_ok=True)
    g, s, p = _prepare(cfg)
    rep = assemble_report(p, g, s, cfg.solver)
    _write(
        os.path.join(out, "report.json"),
        json.dumps(_jsonify(rep), indent=2) + "\n",
    )
    _write(
        os.path.join(out, "report.csv"),
        CSV_HEADER + "\n" + _csv_row(None, rep) + "\n",
    )
    for key, msg in rep.errors.items():
        print(f"solver failure [{key}]: {msg}", file=sys.stderr)
    return 2 if rep.partial else 0


def _sweep_values(spec: SweepSpec) -> list[float]:
    n = spec.steps
    if spec.scale == "log":
        a, b = math.log(spec.start), math.log(spec.stop)
        return [math.exp(a + (b - a) * i / (n - 1)) for i in range(n)]
    return [spec.start + (spec.stop - spec.start) * i / (n - 1) for i in range(n)]


def _vary_params(p: SystemParams, name: str, value: float) -> SystemParams:
    return dataclasses.replace(p, **{name: value})


def _sweep_point(payload) -> tuple[str, bool, str]:
    """One sweep point; returns (csv_row, failed, stderr_note).

    Top-level so a process pool can pickle it; per-point seed is the config
    seed XOR the point index, making the result independent of pool size.
    """
    cfg_path, out_ignored, vary, value, index = payload
    cfg = load_config(cfg_path)
    params = _vary_params(cfg.params, vary, value)
    cfg = dataclasses.replace(cfg, params=params)
    opts = cfg.solver.with_(seed=cfg.solver.seed ^ index)
    try:
        g, s, p = _prepare(cfg)
        rep = assemble_report(p, g, s, opts)
    except (NlssError, ValueError) as exc:
        return _nan_row(value, params), True, f"point {index} ({vary}={value:g}): {exc}"
    note = ""
    if rep.partial:
        errs = "; ".join(f"{k}: {v}" for k, v in rep.errors.items())
        note = f"point {index} ({vary}={value:g}) partial: {errs}"
    return _csv_row(value, rep), rep.partial, note


def cmd_sweep(config_path: str, spec: SweepSpec, out_dir: str | None = None) -> int:
    cfg = load_config(config_path)
    out = out_dir or cfg.out_dir
    os.makedirs(out, exist_ok=True)
    values = _sweep_values(spec)
    payloads = [(config_path, out, spec.vary, v, i) for i, v in enumerate(values)]

    threads = int(os.environ.get("NLSS_THREADS", "0") or "0")
    if threads <= 0:
        threads = min(os.cpu_count() or 1, len(payloads))
    if threads <= 1:
        results = [_sweep_point(pl) for pl in payloads]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_sweep_point, payloads))

    rows = [row for row, _, _ in results]
    any_failed = any(failed for _, failed, _ in results)
    for _, _, note in results:
        if note:
            print(note, file=sys.stderr)
    _write(os.path.join(out, "sweep.csv"), CSV_HEADER + "\n" + "\n".join(rows) + "\n")
    _write(os.path.join(out, "sweep.svg"), _sweep_svg(spec, values, rows))
    return 2 if any_failed else 0


def _cell(row: str, idx: int) -> float | None:
    cell = row.split(",")[idx]
    return float(cell) if cell else None


def _sweep_svg(spec: SweepSpec, values, rows) -> str:
    from .svgplot import LinePlot

    plot = LinePlot(
        title=f"energy levels vs {spec.vary}",
        xlabel=spec.vary,
        ylabel="energy",
        logx=spec.scale == "log",
    )
    plot.add_series("e_est", values, [_cell(r, 6) for r in rows])
    plot.add_series("c_prime", values, [_cell(r, 7) for r in rows])
    plot.add_series("c_sem", values, [_cell(r, 8) for r in rows])
    if spec.vary == "beta":
        bh1 = [_cell(r, 9) for r in rows]
        bh2 = [_cell(r, 10) for r in rows]
        pairs = [(a, b) for a, b in zip(bh1, bh2) if a is not None and b is not None]
        if pairs:
            plot.add_vertical("Lambda", max(pairs[0]))
        mu1 = _cell(rows[0], 2)
        mu2 = _cell(rows[0], 3)
        if mu1 is not None and mu2 is not None:
            plot.add_vertical("3sqrt(mu1 mu2)", 3.0 * math.sqrt(mu1 * mu2))
            plot.add_vertical("max mu", max(mu1, mu2))
    return plot.render()


def cmd_thresholds(config_path: str, as_json: bool = False) -> int:
    cfg = load_config(config_path)
    g, s, p = _prepare(cfg)
    th = compute_thresholds(p, g, s, cfg.solver)
    if as_json:
        print(json.dumps(_jsonify(th), indent=2))
    else:
        print(f"beta_hat_1 = {th.beta_hat_1:.12g}")
        print(f"beta_hat_2 = {th.beta_hat_2:.12g}")
        print(f"Lambda     = {th.lambda_cap:.12g}")
        print(f"3*sqrt(mu1*mu2) = {th.three_sqrt:.12g}")
        print(f"max(mu1, mu2)   = {th.mu_max:.12g}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nlss")
    sub = ap.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="single solve, writes report.json/report.csv")
    solve.add_argument("--config", required=True)
    solve.add_argument("--out", default=None)

    sweep = sub.add_parser("sweep", help="parameter sweep, writes sweep.csv/sweep.svg")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--out", default=None)
    sweep.add_argument(
        "--vary", required=True, choices=["beta", "mu1", "mu2", "tau1", "tau2"]
    )
    sweep.add_argument("--from", dest="start", type=float, required=True)
    sweep.add_argument("--to", dest="stop", type=float, required=True)
    sweep.add_argument("--steps", type=int, required=True)
    sweep.add_argument("--log", action="store_true")

    thr = sub.add_parser("thresholds", help="print coupling thresholds")
    thr.add_argument("--config", required=True)
    thr.add_argument("--json", action="store_true")
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return cmd_solve(args.config, args.out)
        if args.command == "sweep":
            spec = SweepSpec(
                vary=args.vary,
                start=args.start,
                stop=args.stop,
                steps=args.steps,
                scale="log" if args.log else "linear",
            )
            return cmd_sweep(args.config, spec, args.out)
        return cmd_thresholds(args.config, args.json)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
