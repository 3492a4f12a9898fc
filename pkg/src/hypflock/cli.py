"""Command line interface: single runs, verification suites, and parameter
sweeps.

    hypflock simulate --config cfg.json --out outdir [--preset fig1]
    hypflock verify --suite trig-identities [--samples 1000] [--seed 0]
    hypflock sweep --config sweep.json --out outdir [--jobs 4]
"""

import argparse
import concurrent.futures
import itertools
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from .dynamics import SimConfig
from .runio import _fmt, run_to_directory
from .verify import SUITES, run_suite

log = logging.getLogger("hypflock")

PRESETS = {
    # constant weight, the headline flocking-to-rest experiment
    "fig1": {
        "N": 10,
        "d": 2,
        "kappa": 1.0,
        "weight": {"kind": "constant", "param": 1.0},
        "dt": 1e-3,
        "t_end": 200.0,
        "sample_every": 100,
        "seed": 20200706,
        "initializer": {"kind": "random_ball", "radius": 1.0, "vel_scale": 1.35},
        "projection": True,
    },
    # geodesic initial data + cosh weight, the Kuramoto-reduction study
    "geodesic-hk": {
        "N": 5,
        "d": 2,
        "kappa": 1.0,
        "weight": {"kind": "cosh_distance"},
        "dt": 1e-4,
        "t_end": 10.0,
        "sample_every": 100,
        "seed": 20200706,
        "initializer": {"kind": "geodesic_random", "radius": 1.0, "alpha_dot_scale": 1.0},
        "projection": True,
    },
}


def load_config(path=None, preset=None):
    data = dict(PRESETS[preset]) if preset else {}
    if path is not None:
        try:
            loaded = json.loads(Path(path).read_text())
        except json.JSONDecodeError as err:
            raise SystemExit(f"malformed config {path}: {err}")
        data.update(loaded)
    if not data:
        raise SystemExit("need --config and/or --preset")
    try:
        return SimConfig.from_dict(data)
    except (TypeError, ValueError, KeyError) as err:
        raise SystemExit(f"bad config value: {err}")


def cmd_simulate(args):
    cfg = load_config(args.config, args.preset)
    status, _ = run_to_directory(cfg, args.out)
    log.info("run finished with status %s", status)
    print(f"simulate: {status} (artifacts in {args.out})")
    return 0 if status == "completed" else 1


def cmd_verify(args):
    if args.samples == 0:
        print(f"verify {args.suite}: 0 samples requested, vacuous pass", file=sys.stderr)
        return 0
    results = run_suite(args.suite, args.samples, args.seed)
    ok = True
    for r in results:
        mark = "PASS" if r["passed"] else "FAIL"
        print(f"[{mark}] {r['name']}: max residual {r['max_residual']:.3e} (tol {r['tol']:.0e})")
        ok &= r["passed"]
    return 0 if ok else 1


def _cell_seed(base_seed, index):
    # deterministic per-cell seed from (base seed, cell index)
    return int(np.random.SeedSequence([base_seed, index]).generate_state(1)[0])


def _run_cell(payload):
    index, cfg_dict, outdir = payload
    cfg = SimConfig.from_dict(cfg_dict)
    status, records = run_to_directory(cfg, outdir)
    final = records[-1] if records else None
    return {
        "cell": index,
        "kappa": cfg.kappa,
        "N": cfg.N,
        "seed": cfg.seed,
        "weight_kind": cfg.weight.kind,
        "weight_param": cfg.weight.param,
        "status": status,
        "final_energy": final.energy if final else float("nan"),
        "final_max_misalign": final.max_misalign if final else float("nan"),
        "final_det_123": (final.coplanarity[0] if final and final.coplanarity else float("nan")),
        "alignment_applicable": cfg.weight.bounded and cfg.weight.psi_m > 0,
    }


def cmd_sweep(args):
    try:
        plan = json.loads(Path(args.config).read_text())
    except json.JSONDecodeError as err:
        raise SystemExit(f"malformed sweep config {args.config}: {err}")
    base = plan.get("base", {})
    grid = plan.get("grid", {})
    axes = []
    for key in ("kappa", "N", "seed", "weight"):
        vals = grid.get(key)
        if vals:
            axes.append([(key, v) for v in vals])
    cells = [dict(combo) for combo in itertools.product(*axes)] if axes else [{}]

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    payloads = []
    for idx, cell in enumerate(cells):
        cfg_dict = dict(base)
        cfg_dict.update(cell)
        cfg_dict["seed"] = _cell_seed(cfg_dict.get("seed", 0), idx)
        payloads.append((idx, cfg_dict, str(outdir / f"cell_{idx:03d}")))

    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_run_cell, payloads))
    else:
        rows = [_run_cell(p) for p in payloads]
    rows.sort(key=lambda r: r["cell"])

    cols = [
        "cell", "kappa", "N", "seed", "weight_kind", "weight_param", "status",
        "final_energy", "final_max_misalign", "final_det_123", "alignment_applicable",
    ]
    with open(outdir / "sweep_summary.csv", "w", newline="\n") as fh:
        fh.write(",".join(cols) + "\n")
        for r in rows:
            out = []
            for c in cols:
                v = r[c]
                out.append(_fmt(v) if isinstance(v, float) else str(v))
            fh.write(",".join(out) + "\n")
    failed = [r["cell"] for r in rows if r["status"] != "completed"]
    if failed:
        print(f"sweep: {len(failed)} cell(s) failed: {failed}")
        return 1
    print(f"sweep: {len(rows)} cell(s) completed (summary in {outdir / 'sweep_summary.csv'})")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="hypflock")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one simulation")
    p_sim.add_argument("--config", default=None)
    p_sim.add_argument("--out", required=True)
    p_sim.add_argument("--preset", choices=sorted(PRESETS), default=None)
    p_sim.set_defaults(func=cmd_simulate)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", required=True, choices=SUITES)
    p_ver.add_argument("--samples", type=int, default=None)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    level = os.environ.get("HYPERFLOCK_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
