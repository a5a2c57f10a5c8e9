"""Command-line front end: ``svqaoa {theory,simulate,sweep,small-graph-study}``."""
from __future__ import annotations

import argparse
import json
import sys

from .sweep import (
    MODES,
    SweepConfig,
    emit_csv,
    emit_heatmap_data,
    emit_json,
    run,
    run_theory,
)
from .theory import write_curves_csv


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="svqaoa", description=__doc__)
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        p = sub.add_parser(mode)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--n", type=int, nargs="+")
        p.add_argument("--degree", type=int, nargs="+")
        p.add_argument("--depth", type=int, nargs="+")
        p.add_argument("--p2", type=float, nargs="+", help="two-qubit gate error rates")
        p.add_argument("--p", type=float, nargs="+", help="local noise rates (theory, simulate)")
        p.add_argument("--p1", type=float, help="single-qubit gate error rate (default p2/10)")
        p.add_argument("--noise-kind", choices=["local_depolarizing", "local_dephasing"])
        p.add_argument("--shots", type=int)
        p.add_argument("--seed", type=int, help="graph and trajectory seed")
        p.add_argument("--engine", choices=["exact", "trajectory", "auto"])
        p.add_argument("--out", help="output path (.json for JSON, CSV otherwise)")
        p.add_argument("--workers", type=int)
        p.add_argument("--heatmap", help="also write a depth x rate heatmap of R")
    return parser


def config_from_args(args) -> SweepConfig:
    obj = {"mode": args.mode}
    if args.config:
        with open(args.config) as fh:
            obj.update(json.load(fh))
        obj["mode"] = args.mode
    rates = args.p2 if args.p2 is not None else args.p
    overrides = {
        "n": args.n, "degree": args.degree, "depth": args.depth, "rates": rates,
        "p1": args.p1, "noise_kind": args.noise_kind, "shots": args.shots,
        "engine": args.engine, "out": args.out, "workers": args.workers,
    }
    if args.seed is not None:
        overrides["graph_seed"] = overrides["trajectory_seed"] = args.seed
    obj.update({k: v for k, v in overrides.items() if v is not None})
    return SweepConfig.from_dict(obj)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except (OSError, ValueError, TypeError) as exc:
        print(f"svqaoa: config error: {exc}", file=sys.stderr)
        return 2

    out = config.out or "/dev/stdout"
    if config.mode == "theory":
        write_curves_csv(run_theory(config), out)
        return 0
    records = run(config)
    if out.endswith(".json"):
        emit_json(records, out)
    else:
        emit_csv(records, out)
    if args.heatmap:
        try:
            emit_heatmap_data(records, args.heatmap)
        except ValueError as exc:
            print(f"svqaoa: heatmap not written: {exc}", file=sys.stderr)
            return 1
    failed = sum(1 for r in records if r.error)
    if failed:
        print(f"svqaoa: {failed} grid point(s) recorded errors", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
