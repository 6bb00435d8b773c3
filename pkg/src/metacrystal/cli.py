"""Command line entry point: ``metacrystal {band,lattice,cavity,ensemble}``."""
from __future__ import annotations

import argparse
import json
import sys

from .config import builtin_path, parse_config
from .errors import SchemaError
from .runner import run_scenario

KIND_OF = {
    "band": "band_report",
    "lattice": "lattice_run",
    "cavity": "cavity_run",
    "ensemble": "ensemble_run",
}


def build_parser():
    parser = argparse.ArgumentParser(prog="metacrystal", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in KIND_OF:
        p = sub.add_parser(name, help=f"run a {KIND_OF[name]} scenario")
        p.add_argument("--config", required=True,
                       help="scenario JSON file, or builtin:<name> for a bundled scenario")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override the config seed (u64)")
        if name == "ensemble":
            p.add_argument("--workers", type=int, default=None,
                           help="worker processes (0 = all CPUs)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        path = args.config
        if path.startswith("builtin:"):
            path = builtin_path(path[len("builtin:"):])
        cfg = parse_config(path)
        if cfg.kind != KIND_OF[args.command]:
            raise SchemaError(f"'{args.command}' expects kind {KIND_OF[args.command]}, "
                              f"got {cfg.kind}", "/kind")
        if args.seed is not None:
            if not 0 <= args.seed < 2**64:
                raise SchemaError("seed must be an unsigned 64-bit integer", "/seed")
            cfg = cfg.override_seed(args.seed)
        report = run_scenario(cfg, args.out, getattr(args, "workers", None))
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps({k: str(v) for k, v in report.files.items()}, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
