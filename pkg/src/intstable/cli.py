"""Experiment driver.

One subcommand-free CLI: the experiment is a config key, flags only carry
the config file, overrides, output directory, seed and thread count.
Every run writes results.csv, results.json (the same table) and
manifest.json; the manifest plus the seed fully determine a re-run.

Exit codes: 0 success, 1 validation failure, 2 configuration error,
3 numeric-accuracy failure.
"""

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field, asdict
from typing import List, Optional, Tuple

import numpy as np

from .analytic import (
    HittingPlaceLaw,
    StableParams,
    derived_exponents,
    hitting_place_density_vertical,
    hitting_place_mellin,
)
from . import checks, quadrature, stats
from .errors import AccuracyError, InvalidParameterError
from .simulate import PathConfig, sample_hitting_batch

ARTIFACT_VERSION = "1.0.0"

EXPERIMENTS = (
    "exponents", "density-table", "mellin-table", "simulate-theta",
    "hitting-place", "validate-all", "quad-check",
)
_STOCHASTIC = ("simulate-theta", "hitting-place", "validate-all")

_DEFAULTS = {
    "alpha": 2.0,
    "rho": 0.5,
    "experiment": "exponents",
    "x0": 0.0,
    "y0": -1.0,
    "h": 1e-3,
    "t_max": 1e3,
    "n": 200000,
    "s_grid": [0.25, 0.5, 0.75],
    "z_grid": list(np.geomspace(0.01, 100.0, 41)),
    "windows": [[10.0, 1e3]],
    "seed": None,
    "out": ".",
    "format": "csv",
}


@dataclass
class RunConfig:
    alpha: float
    rho: float
    experiment: str
    x0: float
    y0: float
    h: float
    t_max: float
    n: int
    s_grid: List[float]
    z_grid: List[float]
    windows: List[List[float]]
    seed: Optional[int]
    out: str
    format: str

    def params(self) -> StableParams:
        return StableParams(self.alpha, self.rho)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON config, rejecting unknown keys."""
    try:
        raw = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as e:
        raise InvalidParameterError(f"config is not valid JSON: {e}")
    if not isinstance(raw, dict):
        raise InvalidParameterError("config must be a JSON object")
    unknown = sorted(set(raw) - set(_DEFAULTS))
    if unknown:
        raise InvalidParameterError(f"unknown config key(s): {', '.join(unknown)}")
    merged = dict(_DEFAULTS, **raw)
    cfg = RunConfig(**merged)
    if cfg.experiment not in EXPERIMENTS:
        raise InvalidParameterError(
            f"unknown experiment '{cfg.experiment}'; choose from {EXPERIMENTS}")
    cfg.params()  # raises with the admissibility message on bad (alpha, rho)
    if cfg.format not in ("csv", "json"):
        raise InvalidParameterError("format must be 'csv' or 'json'")
    if cfg.experiment in _STOCHASTIC and cfg.seed is None:
        raise InvalidParameterError(
            f"experiment '{cfg.experiment}' is stochastic: seed is mandatory")
    if cfg.seed is not None:
        cfg.seed = int(cfg.seed)
    if cfg.n < 1:
        raise InvalidParameterError("n must be >= 1")
    return cfg


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.17g}"
    return "" if v is None else str(v)


def _write_outputs(out_dir, columns, rows, manifest):
    os.makedirs(out_dir, exist_ok=True)
    run_id = manifest["run_id"]
    with open(os.path.join(out_dir, "results.csv"), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["run_id"] + columns)
        for row in rows:
            w.writerow([run_id] + [_fmt(row.get(c)) for c in columns])
    def np_item(o):
        if isinstance(o, np.generic):
            return o.item()
        raise TypeError(f"not JSON serializable: {type(o)}")

    with open(os.path.join(out_dir, "results.json"), "w") as fh:
        json.dump({"run_id": run_id, "columns": columns, "rows": rows},
                  fh, indent=1, sort_keys=True, default=np_item)
        fh.write("\n")
    with open(os.path.join(out_dir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=1, sort_keys=True, default=np_item)
        fh.write("\n")


# ---------------------------------------------------------------------------
# Experiments: each returns (columns, rows, summary, passed-or-None)
# ---------------------------------------------------------------------------

def _exp_exponents(cfg):
    d = derived_exponents(cfg.params())
    rows = [{"name": k, "value": v} for k, v in [
        ("alpha", cfg.alpha), ("rho", cfg.rho),
        ("theta", d.theta), ("gamma", d.gamma), ("chi", d.chi),
        ("delta", d.delta), ("eta", d.eta), ("sigma", d.sigma),
        ("kappa", cfg.params().kappa),
    ]]
    return ["name", "value"], rows, {"theta": d.theta, "chi": d.chi}, None


def _exp_density_table(cfg):
    law = HittingPlaceLaw(cfg.params(), "vertical", cfg.y0 if cfg.y0 < 0 else -1.0)
    rows = [{"z": float(z),
             "density": float(hitting_place_density_vertical(law, z))}
            for z in cfg.z_grid]
    mass = float(np.trapezoid([r["density"] for r in rows],
                              [r["z"] for r in rows]))
    return ["z", "density"], rows, {"grid_mass": mass}, None


def _exp_mellin_table(cfg):
    p = cfg.params()
    vert = HittingPlaceLaw(p, "vertical", -1.0)
    horiz = HittingPlaceLaw(p, "horizontal", -1.0)
    rows = []
    for s in cfg.s_grid:
        rows.append({
            "s": float(s),
            "vertical": float(hitting_place_mellin(vert, s)),
            "horizontal": float(hitting_place_mellin(horiz, s)),
        })
    return ["s", "vertical", "horizontal"], rows, {"n_s": len(rows)}, None


def _simulate(cfg, extend):
    pc = PathConfig(cfg.params(), cfg.x0, cfg.y0, cfg.h, cfg.t_max, cfg.seed)
    return sample_hitting_batch(pc, cfg.n, extend=extend)


def _exp_simulate_theta(cfg):
    batch = _simulate(cfg, extend=False)
    t_hi = max(w[1] for w in cfg.windows)
    t_lo = min(w[0] for w in cfg.windows)
    grid = np.geomspace(max(t_lo / 2.0, cfg.h), min(t_hi, cfg.t_max), 60)
    curve = stats.survival_curve(batch, grid, censor_time=cfg.t_max)
    rows = [{"record": "survival", "t": float(t), "survival": float(s),
             "at_risk": int(r), "window_lo": None, "window_hi": None,
             "theta_hat": None, "stderr": None}
            for t, s, r in zip(curve.times, curve.survival, curve.at_risk)]
    fits = {}
    for w in cfg.windows:
        fit = stats.fit_tail_exponent(curve, (w[0], w[1]))
        rows.append({"record": "fit", "t": None, "survival": None,
                     "at_risk": None, "window_lo": float(w[0]),
                     "window_hi": float(w[1]),
                     "theta_hat": fit.exponent_hat, "stderr": fit.stderr})
        fits[f"[{w[0]:g},{w[1]:g}]"] = fit.exponent_hat
    cols = ["record", "t", "survival", "at_risk", "window_lo", "window_hi",
            "theta_hat", "stderr"]
    summary = {"theta_hat": fits,
               "theta": derived_exponents(cfg.params()).theta,
               "censored": batch.censor_count}
    return cols, rows, summary, None


def _exp_hitting_place(cfg):
    batch = _simulate(cfg, extend=True)
    places = batch.hitting_places()
    law = HittingPlaceLaw(cfg.params(), "vertical", cfg.y0)
    sweep, max_z = stats.mellin_sweep_report(places, law, cfg.s_grid)
    cols = ["s", "empirical", "se", "analytic", "z", "rel_dev"]
    return cols, sweep, {"max_abs_z": max_z, "n": int(places.size)}, None


def _exp_quad_check(cfg):
    rows = []
    fres = checks.check_fresnel()
    rows.append({"check": fres.name, "metric": fres.stats["worst_rel_err"],
                 "tol": fres.stats["tol"], "passed": fres.passed})
    ti = checks.check_time_integrals()
    rows.append({"check": ti.name, "metric": ti.stats["worst_rel_err"],
                 "tol": ti.stats["tol"], "passed": ti.passed})
    ok = all(r["passed"] for r in rows)
    cols = ["check", "metric", "tol", "passed"]
    return cols, rows, {"all_passed": ok}, ok


def _exp_validate_all(cfg):
    rows = []
    results = [
        checks.check_exponents(),
        checks.check_fresnel(),
        checks.check_time_integrals(),
        checks.check_product_identities(),
    ]
    p = cfg.params()
    pc = PathConfig(p, cfg.x0, cfg.y0, cfg.h, cfg.t_max, cfg.seed)
    main = sample_hitting_batch(pc, cfg.n, extend=True, coarsen=True)
    places = main.hitting_places()
    n_half = max(cfg.n // 4, 1)
    if p.alpha == 2.0:
        pc_half = PathConfig(p, cfg.x0, cfg.y0, cfg.h / 2.0, cfg.t_max, cfg.seed)
        half = sample_hitting_batch(pc_half, n_half, extend=True, rel_step=5e-5)
        results.append(checks.check_mckean_ks(places, half.hitting_places()))
    results.append(checks.check_hitting_mellin(places, p, y0=cfg.y0,
                                               s_grid=tuple(cfg.s_grid)))
    grid = np.geomspace(max(cfg.h * 10.0, 1e-2), cfg.t_max, 60)
    curve = stats.survival_curve(main, grid, censor_time=cfg.t_max)
    w = cfg.windows[0]
    results.append(checks.check_theta_fit(curve, p, window=(w[0], w[1])))
    k = min(2000, max(places.size // 10, 10))
    results.append(checks.check_hill(places, p, k=k))
    for r in results:
        metric = {k: v for k, v in r.stats.items() if np.isscalar(v)}
        rows.append({"check": r.name, "passed": r.passed,
                     "detail": json.dumps(metric, sort_keys=True)})
    ok = all(r.passed for r in results)
    cols = ["check", "passed", "detail"]
    return cols, rows, {"all_passed": ok,
                        "checks": {r.name: r.passed for r in results}}, ok


_RUNNERS = {
    "exponents": _exp_exponents,
    "density-table": _exp_density_table,
    "mellin-table": _exp_mellin_table,
    "simulate-theta": _exp_simulate_theta,
    "hitting-place": _exp_hitting_place,
    "validate-all": _exp_validate_all,
    "quad-check": _exp_quad_check,
}


def run(cfg: RunConfig) -> int:
    """Execute one experiment, writing results and the manifest."""
    started = time.time()
    canonical = cfg.to_json()
    # the run is identified by the scientific config, not where it lands
    ident = {k: v for k, v in asdict(cfg).items() if k != "out"}
    run_id = hashlib.sha256(
        json.dumps(ident, sort_keys=True).encode()).hexdigest()[:16]
    try:
        columns, rows, summary, passed = _RUNNERS[cfg.experiment](cfg)
    except AccuracyError as e:
        manifest = {
            "run_id": run_id, "artifact_version": ARTIFACT_VERSION,
            "config": json.loads(canonical), "error": str(e),
            "wall_clock_s": time.time() - started, "passed": False,
        }
        _write_outputs(cfg.out, ["error"], [{"error": str(e)}], manifest)
        return 3
    manifest = {
        "run_id": run_id,
        "artifact_version": ARTIFACT_VERSION,
        "config": json.loads(canonical),
        "wall_clock_s": time.time() - started,
        "summary": summary,
        "passed": passed,
    }
    _write_outputs(cfg.out, columns, rows, manifest)
    return 0 if passed in (None, True) else 1


def _apply_set(raw: dict, assignment: str):
    if "=" not in assignment:
        raise InvalidParameterError(f"--set needs key=value, got '{assignment}'")
    key, _, val = assignment.partition("=")
    try:
        raw[key] = json.loads(val)
    except json.JSONDecodeError:
        raw[key] = val


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="intstable",
        description="Integrated stable process experiments")
    ap.add_argument("--config", help="JSON config file")
    ap.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                    help="override a config key (value parsed as JSON)")
    ap.add_argument("--out", help="output directory")
    ap.add_argument("--seed", type=int, help="seed for stochastic experiments")
    ap.add_argument("--threads", type=int, default=1,
                    help="parallelism degree (results are independent of it)")
    args = ap.parse_args(argv)
    try:
        text = "{}"
        if args.config:
            with open(args.config) as fh:
                text = fh.read()
        raw = json.loads(text) if text.strip() else {}
        if not isinstance(raw, dict):
            raise InvalidParameterError("config must be a JSON object")
        for assignment in getattr(args, "set"):
            _apply_set(raw, assignment)
        if args.seed is not None:
            raw["seed"] = args.seed
        if args.out is not None:
            raw["out"] = args.out
        cfg = parse_config(json.dumps(raw))
    except (InvalidParameterError, OSError, json.JSONDecodeError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
