"""Command-line interface: ``quintic-bcov solve | verify | table``.

Exit codes: 0 success, 1 a verification check failed, 2 bad input or a
solve error (missing initial data, failed polynomiality check).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .errors import BCOVError, InsufficientInitialData, NotPolynomial
from .feynman import Gauge
from .mirror import build_mirror, initial_table
from .solver import ClassicalData, solve_all

DEFAULTS = {
    "order": 14,
    "genus": 2,
    "genus_max": 2,
    "margin": 10,
    "gauge": "c1b=3/5;c2=-2/25;c3=-4/125",
    "rule": "B",
    "initial_data": None,
    "format": "json",
    "out": None,
    "suite": "all",
}
_INT_KEYS = {"order", "genus", "genus_max", "margin"}


def read_config(path: str | Path) -> dict:
    """Flat ``key = value`` file; '#' starts a comment; dashes in keys are allowed."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key = key.strip().replace("-", "_")
        if key not in DEFAULTS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        value = value.strip()
        out[key] = int(value) if key in _INT_KEYS else value
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quintic-bcov", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("solve", "verify", "table"):
        p = sub.add_parser(name)
        p.add_argument("--config", help="key=value configuration file")
        p.add_argument("--order", type=int)
        p.add_argument("--genus", type=int)
        p.add_argument("--genus-max", dest="genus_max", type=int)
        p.add_argument("--margin", type=int)
        p.add_argument("--gauge", help="c1a=..;c1b=..;c2=..;c3=.. with comma-separated X-coefficients")
        p.add_argument("--rule", choices=("B", "modified"))
        p.add_argument("--initial-data", dest="initial_data")
        p.add_argument("--format", choices=("json", "csv"))
        p.add_argument("--out")
        if name == "verify":
            p.add_argument("--suite", choices=("mirror", "oracle", "hae", "gauge", "all"))
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        cfg.update(read_config(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    Gauge.parse(cfg["gauge"])  # validate degree bounds early
    return cfg


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _solve(cfg: dict):
    md = build_mirror(cfg["order"])
    table = initial_table(md)
    classical = ClassicalData.default()
    if cfg["initial_data"]:
        classical.update_from_file(cfg["initial_data"])
    gauge = Gauge.parse(cfg["gauge"])
    return solve_all(cfg["genus"], gauge, md, table, classical, cfg["margin"], cfg["rule"])


def _table_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["g", "d", "numerator", "denominator"])
    for rep in reports:
        for d, v in sorted(rep.invariants.items()):
            w.writerow([rep.genus, d, str(v.numerator), str(v.denominator)])
    return buf.getvalue()


def cmd_solve(cfg: dict) -> int:
    reports = _solve(cfg)
    if cfg["format"] == "csv":
        _emit(_table_csv(reports), cfg["out"])
    else:
        payload = {"config": cfg, "reports": [r.as_dict() for r in reports]}
        _emit(json.dumps(payload, indent=2) + "\n", cfg["out"])
    return 0


def cmd_table(cfg: dict) -> int:
    _emit(_table_csv(_solve(cfg)), cfg["out"])
    return 0


def cmd_verify(cfg: dict) -> int:
    from .checks import run_suite

    results = run_suite(cfg["suite"], cfg)
    ok = all(r["passed"] for r in results)
    if cfg["format"] == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "passed", "detail"])
        for r in results:
            w.writerow([r["name"], r["passed"], r["detail"]])
        _emit(buf.getvalue(), cfg["out"])
    else:
        _emit(json.dumps({"config": cfg, "checks": results, "passed": ok}, indent=2) + "\n", cfg["out"])
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        handler = {"solve": cmd_solve, "verify": cmd_verify, "table": cmd_table}[args.command]
        return handler(cfg)
    except NotPolynomial as exc:
        print(f"error: {exc} (failing q-order {exc.order})", file=sys.stderr)
        return 2
    except (InsufficientInitialData, BCOVError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
