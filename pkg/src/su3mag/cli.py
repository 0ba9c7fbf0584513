"""Flag-driven command line interface.

Subcommands: verify, centralizer, flow, brackets.  All output is plain
structured text (JSON or CSV); identical configuration and seed produce
byte-identical files.  The default output directory comes from the
SU3MAG_OUTDIR environment variable (falling back to the working
directory); a JSON config file mirroring the flags can be passed with
--config, with explicit flags taking precedence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys as _sys
from pathlib import Path

import numpy as np

from . import reports
from .phase import integrate_flow


def _out_dir(args):
    out = args.out or os.environ.get("SU3MAG_OUTDIR") or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _merge_config(args, keys):
    config = {}
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            config.update(json.load(fh))
    for key in keys:
        val = getattr(args, key, None)
        if val is not None:
            config[key] = val
    return config


def cmd_verify(args):
    config = reports.default_config(args.case)
    config.update(_merge_config(
        args, ("case", "eps", "seed", "samples", "t_end", "dt")))
    if float(config["eps"]) == 0.0:
        print("error: eps must be nonzero (the magnetic parameter)",
              file=_sys.stderr)
        return 2
    report = reports.run_verification(config)
    for line in reports.report_lines(report):
        print(line)
    out = _out_dir(args) / f"verify_{config['case']}.json"
    out.write_text(reports.report_json(report, config), encoding="utf-8")
    print(f"report written to {out}")
    return 0 if report.passed else 1


def cmd_centralizer(args):
    text = reports.centralizer_report(args.algebra, args.sub, args.m_only,
                                      args.max_degree)
    print(text, end="")
    out = _out_dir(args) / f"generators_{args.algebra}_{args.sub}.txt"
    out.write_text(text, encoding="utf-8")
    alg_text = reports.algebra_text(args.algebra, args.sub)
    alg_out = _out_dir(args) / f"algebra_{args.algebra}_{args.sub}.txt"
    alg_out.write_text(alg_text, encoding="utf-8")
    print(f"generator set written to {out}")
    print(f"algebra spec written to {alg_out}")
    return 0


def cmd_flow(args):
    config = reports.default_config(args.case)
    config.update(_merge_config(
        args, ("case", "eps", "seed", "t_end", "dt")))
    if float(config["eps"]) == 0.0:
        print("error: eps must be nonzero (the magnetic parameter)",
              file=_sys.stderr)
        return 2
    sys_ = reports.make_system(config["case"], config["eps"])
    rng = np.random.default_rng(int(config["seed"]))
    pt = sys_.random_regular_point(rng)
    traj = integrate_flow(sys_, pt, t_end=float(config["t_end"]),
                          dt=float(config["dt"]))
    fns = reports.monitored_functions(sys_)
    stride = max(1, len(traj.points) // int(args.max_rows))
    out = _out_dir(args)
    csv_path = out / f"trajectory_{config['case']}.csv"
    csv_path.write_text(reports.trajectory_csv(sys_, traj, fns, stride),
                        encoding="utf-8")
    cons_path = out / f"conservation_{config['case']}.json"
    cons_doc = reports.conservation_json(sys_, traj, fns, stride=stride)
    cons_path.write_text(cons_doc, encoding="utf-8")
    doc = json.loads(cons_doc)
    for entry in doc["functions"]:
        status = "pass" if entry["pass"] else "FAIL"
        print(f"[{status}] {entry['function']}: max drift "
              f"{entry['max_drift']:.3e}")
    print(f"trajectory written to {csv_path}")
    print(f"conservation report written to {cons_path}")
    return 0 if all(e["pass"] for e in doc["functions"]) else 1


def cmd_brackets(args):
    config = reports.default_config(args.case)
    config.update(_merge_config(args, ("case", "eps")))
    sys_ = reports.make_system(config["case"], config["eps"])
    text = reports.bracket_table_text(sys_)
    print(text, end="")
    out = _out_dir(args)
    (out / f"brackets_{config['case']}.txt").write_text(text,
                                                        encoding="utf-8")
    (out / f"brackets_{config['case']}.json").write_text(
        reports.bracket_table_json(sys_), encoding="utf-8")
    print(f"bracket tables written to {out}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="su3mag",
        description="certificates for magnetic geodesic systems on SU(3) "
                    "homogeneous spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="output directory "
                                     "(default: $SU3MAG_OUTDIR or .)")
        p.add_argument("--config", help="JSON config file mirroring flags")

    p = sub.add_parser("verify", help="run the full certificate suite")
    p.add_argument("--case", choices=("regular", "irregular"),
                   default="regular")
    p.add_argument("--eps", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--dt", type=float)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("centralizer", help="commutant generators and relations")
    p.add_argument("--algebra", choices=("su3", "su2"), required=True)
    p.add_argument("--sub", choices=("torus", "irregular-A"), default="torus")
    p.add_argument("--m-only", action="store_true",
                   help="restrict to the reductive complement")
    p.add_argument("--max-degree", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_centralizer)

    p = sub.add_parser("flow", help="integrate the magnetic geodesic flow")
    p.add_argument("--case", choices=("regular", "irregular"),
                   default="regular")
    p.add_argument("--eps", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--max-rows", type=int, default=2000,
                   help="cap on exported CSV rows")
    common(p)
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("brackets", help="emit symbolic bracket tables")
    p.add_argument("--case", choices=("regular", "irregular"),
                   default="regular")
    p.add_argument("--eps", type=float)
    common(p)
    p.set_defaults(func=cmd_brackets)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
