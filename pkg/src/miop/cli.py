"""Command-line entry point ``miop``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import __version__
from .report import SCHEMA_VERSION, SUITES, ConfigError, dumps, golden_suite, parse_config, run


def _split_ints(text: str) -> List[int]:
    return [int(t) for t in text.split(",") if t.strip()] if text else []


def _config_from_args(args, suites: List[str]) -> dict:
    cfg = {"model": args.model, "n_max": args.nmax, "suites": suites}
    cfg["y_poly"] = [t.strip() for t in args.y.split(",")]
    if args.model == "mp":
        cfg["parameters"] = {"a": args.a, "circle": _split_ints(args.circle)}
        cfg["index_set"] = _split_ints(args.d)
    else:
        if args.a1 is None or args.a2 is None:
            raise ConfigError("cH needs --a1 and --a2")
        cfg["parameters"] = {"a1": args.a1, "a2": args.a2}
        cfg["index_set"] = {"typeI": _split_ints(args.d1), "typeII": _split_ints(args.d2)}
    return cfg


def _add_model_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=("mp", "ch"), default="mp")
    p.add_argument("--a", default="2", help="MP parameter a (rational, e.g. 5/2)")
    p.add_argument("--circle", default="3,4,5", help="Pythagorean triple p,q,r: sin=p/r, cos=q/r")
    p.add_argument("--a1", help="cH parameter a1 (Gaussian rational, e.g. 3+i)")
    p.add_argument("--a2", help="cH parameter a2")
    p.add_argument("--d", default="", help="MP index set, comma separated")
    p.add_argument("--d1", default="", help="cH type I indices")
    p.add_argument("--d2", default="", help="cH type II indices")
    p.add_argument("--y", default="1", help="coefficients of Y, constant term first")
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--out", help="write the JSON report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="miop", description="Exact multi-indexed MP/cH polynomial verification")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run the suites listed in a JSON config")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out")
    p_golden = sub.add_parser("golden", help="compare against closed-form coefficient tables")
    p_golden.add_argument("--out")
    for name in SUITES:
        if name == "golden":
            continue
        _add_model_options(sub.add_parser(name, help=f"run the {name} suite"))
    p_all = sub.add_parser("all", help="run every model-dependent suite")
    _add_model_options(p_all)
    return parser


def _write(report: dict, out: Optional[str]) -> None:
    text = dumps(report)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            with open(args.config, encoding="utf-8") as fh:
                raw = json.load(fh)
            report = run(parse_config(raw))
        elif args.command == "golden":
            report = {
                "version": SCHEMA_VERSION,
                "tool_version": __version__,
                "config": {"suites": ["golden"]},
                "suites": [{"name": "golden", **golden_suite()}],
            }
        else:
            suites = [s for s in SUITES if s != "golden"] if args.command == "all" else [args.command]
            report = run(parse_config(_config_from_args(args, suites)))
    except (ConfigError, ValueError, OSError) as exc:
        print(f"miop: error: {exc}", file=sys.stderr)
        return 2
    _write(report, getattr(args, "out", None))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
