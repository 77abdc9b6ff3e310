"""Command-line interface.

Data goes to stdout, warnings and diagnostics to stderr. Exit codes:
0 success, 1 domain or usage error, 2 verification failure, 3 convergence
failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings

from . import closed_form
from .analysis import SweepSpec, Target, find_sign_change, minimize_scalar, sweep
from .errors import ConvergenceError, DomainError, UnsupportedOrder
from .model import ChannelId, GeometryKind, Scenario, SpherePlane, SphereSphere
from .verify import run_checks

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_CONVERGENCE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """Fixed 17-significant-digit encoding; parses back to the same float."""
    if x is None:
        return ""
    return format(float(x), ".17g")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--geometry", choices=[k.value for k in GeometryKind], default="sphere-plane")
    p.add_argument("--materials", default="pc,pc",
                   help="body1,body2 from {pc,drude}; body 1 is the sphere / sphere 1")


def _add_target(p: argparse.ArgumentParser) -> None:
    p.add_argument("--target", choices=["f", "s"], default="s")
    p.add_argument("--channel", default="total", help="m{0|1}-{TE|TM}{TE|TM} or total")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="casimir-channels", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate all channels at one temperature")
    _add_common(p)
    p.add_argument("--nu", type=float, help="dimensionless temperature")
    p.add_argument("--L", type=float, help="surface-to-surface distance (m)")
    p.add_argument("--R", type=float, help="sphere radius (m), sphere-plane")
    p.add_argument("--R1", type=float, help="radius of sphere 1 (m)")
    p.add_argument("--R2", type=float, help="radius of sphere 2 (m)")
    p.add_argument("--T", type=float, help="temperature (K); needs SI geometry")
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("sweep", help="tabulate a target over a nu grid as CSV")
    _add_common(p)
    _add_target(p)
    p.add_argument("--nu-min", type=float, required=True)
    p.add_argument("--nu-max", type=float, required=True)
    p.add_argument("--points", type=int, default=256)
    p.add_argument("--spacing", choices=["lin", "log"], default="lin")

    for name, help_text in (("root", "locate a sign change"), ("min", "locate a minimum")):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        _add_target(p)
        p.add_argument("--bracket", required=True, help="lo,hi")
        p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("verify", help="run the oracle and identity checks")
    p.add_argument("--report", action="store_true", help="print per-check JSON")
    return parser


def _target(args) -> Target:
    channel = None if args.channel.strip().lower() == "total" else ChannelId.parse(args.channel)
    return Target(GeometryKind(args.geometry), Scenario.parse(args.materials), args.target, channel)


def _geometry(args):
    if args.geometry == GeometryKind.SPHERE_PLANE.value:
        if args.R1 is not None or args.R2 is not None:
            raise UsageError("sphere-plane takes --R, not --R1/--R2")
        if args.L is None or args.R is None:
            raise UsageError("SI mode needs --L and --R")
        return SpherePlane(args.L, args.R)
    if args.R is not None:
        raise UsageError("sphere-sphere takes --R1 and --R2, not --R")
    if args.L is None or args.R1 is None or args.R2 is None:
        raise UsageError("SI mode needs --L, --R1 and --R2")
    return SphereSphere(args.L, args.R1, args.R2)


def eval_record(args) -> dict:
    scenario = Scenario.parse(args.materials)
    kind = GeometryKind(args.geometry)
    si_given = any(getattr(args, k) is not None for k in ("L", "R", "R1", "R2", "T"))
    record = {"geometry": kind.value, "materials": scenario.label}
    if args.nu is not None:
        if si_given:
            raise UsageError("--nu cannot be combined with SI inputs (--L/--R/--R1/--R2/--T)")
        nu = args.nu
        dims = None
    else:
        if args.T is None:
            raise UsageError("give either --nu or an SI geometry with --T")
        geometry = _geometry(args)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            dims = closed_form.dimensional_outputs(geometry, scenario, args.T)
        nu = dims.nu
        record["inputs"] = {k: getattr(args, k) for k in ("L", "R", "R1", "R2", "T")
                            if getattr(args, k) is not None}
    table = closed_form.scenario_total(kind, scenario, nu)
    record["nu"] = table.nu
    record["channels"] = [
        {"channel": v.channel.label, "weight": v.weight, "f": v.f, "s": v.s} for v in table.values
    ]
    record["totals"] = {"f": table.f_total, "s": table.s_total}
    record["F"] = dims.F if dims else None
    record["S"] = dims.S if dims else None
    record["warnings"] = list(dims.warnings) if dims else []
    return record


EVAL_COLUMNS = ["geometry", "materials", "nu", "channel", "weight", "f", "s", "F", "S"]


def eval_csv(record: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EVAL_COLUMNS)
    head = [record["geometry"], record["materials"], fmt(record["nu"])]
    for ch in record["channels"]:
        w.writerow(head + [ch["channel"], ch["weight"], fmt(ch["f"]), fmt(ch["s"]), "", ""])
    totals = record["totals"]
    w.writerow(head + ["total", "", fmt(totals["f"]), fmt(totals["s"]), fmt(record["F"]), fmt(record["S"])])
    return buf.getvalue()


def sweep_csv(table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["nu", "value"])
    for nu, value in table.rows():
        w.writerow([fmt(nu), fmt(value)])
    return buf.getvalue()


def _parse_bracket(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--bracket must be 'lo,hi', got {text!r}") from None
    return lo, hi


def _run(args) -> int:
    if args.command == "eval":
        record = eval_record(args)
        for msg in record["warnings"]:
            print(f"warning: {msg}", file=sys.stderr)
        if args.format == "json":
            print(json.dumps(record, indent=2))
        else:
            sys.stdout.write(eval_csv(record))
        return EXIT_OK

    if args.command == "sweep":
        spec = SweepSpec(_target(args), args.nu_min, args.nu_max, args.points, args.spacing)
        sys.stdout.write(sweep_csv(sweep(spec)))
        return EXIT_OK

    if args.command in ("root", "min"):
        target = _target(args)
        bracket = _parse_bracket(args.bracket)
        if args.command == "root":
            res = find_sign_change(target, bracket, **({"tol": args.tol} if args.tol else {}))
        else:
            res = minimize_scalar(target, bracket, **({"tol": args.tol} if args.tol else {}))
        out = {"target": target.label, **res.__dict__}
        out["bracket"] = list(res.bracket)
        print(json.dumps(out, indent=2))
        return EXIT_OK

    results = run_checks()
    if args.report:
        print(json.dumps([r.as_dict() for r in results], indent=2))
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  worst={r.worst:.3g}  tol={r.tolerance:g}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args)
    except (UsageError, DomainError, UnsupportedOrder) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
