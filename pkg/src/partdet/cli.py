"""Command line front end.

Every subcommand prints JSON (default) or CSV to stdout, or writes it to
``--output``.  Relative output paths are resolved against the directory in
``$PARTDET_OUTPUT_DIR`` when that variable is set.

Exit codes: 0 success, 1 computation error (or an unexpected MISMATCH from
``verify``), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from . import detpoly as dp
from .bernoulli import bernoulli_barnes_number, bernoulli_number, bernoulli_poly, bernoulli_poly_eval
from .multipoly import MultiPoly, NotDivisibleError, mp_eval
from .partition import (
    PartitionSpec,
    eval_quasi,
    p_oracle,
    quasi_from_delta_cramer,
    quasi_from_delta_system,
    quasi_from_deltabar_system,
    quasi_from_oracle,
)
from .rational import SingularMatrixError, format_rational, parse_rational
from .verify import IDENTITIES, exit_status, is_known_erratum, run_all, run_identity

OUTPUT_DIR_ENV = "PARTDET_OUTPUT_DIR"
NUMERIC_GUARD = 12


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return value


def _parts(text: str) -> tuple[int, ...]:
    try:
        return tuple(_positive(t) for t in text.split(","))
    except argparse.ArgumentTypeError:
        raise argparse.ArgumentTypeError(f"expected comma-separated positive integers, got {text!r}") from None


def _point(text: str) -> tuple:
    try:
        return tuple(parse_rational(t) for t in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", help="write here instead of stdout")
    common.add_argument("--force", action="store_true", help="override size guards")

    parser = argparse.ArgumentParser(
        prog="partdet",
        description="Restricted partition functions and Bernoulli-polynomial determinants, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bernoulli", parents=[common], help="Bernoulli number, polynomial or value")
    p.add_argument("--j", type=_nonneg, required=True)
    p.add_argument("--x", type=parse_rational, help="evaluate B_j(x) instead")
    p.add_argument("--poly", action="store_true", help="print the coefficients of B_j(x)")

    p = sub.add_parser("barnes", parents=[common], help="Bernoulli-Barnes number B_j(a)")
    p.add_argument("--j", type=_nonneg, required=True)
    p.add_argument("--a", type=_parts, required=True)

    p = sub.add_parser("partition-eval", parents=[common], help="p_a(n) by counting")
    p.add_argument("--a", type=_parts, required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--D", type=_positive, help="period; any common multiple of a")
    p.add_argument("--route", choices=("oracle", "delta", "delta-bar"), default="oracle",
                   help="evaluate through a quasi-polynomial from this route")

    p = sub.add_parser("partition-quasi", parents=[common], help="quasi-polynomial coefficients")
    p.add_argument("--a", type=_parts, required=True)
    p.add_argument("--D", type=_positive)
    p.add_argument("--route", choices=("oracle", "delta", "delta-bar", "cramer"), default="delta")

    for name, text in (("delta", "Delta_{r,D}"), ("delta-bar", "Delta-bar_{r,D}")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--r", type=_positive, required=True)
        p.add_argument("--D", type=_positive, required=True)
        p.add_argument("--route", choices=("direct", "poly"), default="direct",
                       help="poly: evaluate the symbolic determinant at the canonical point")
        p.add_argument("--matrix", action="store_true", help="emit the matrix as well")

    for name, text in (("f-poly", "F_{r,D}"), ("g-poly", "G_{r,D} (or G-bar with --bar)"),
                       ("fbar-poly", "F-bar_{r,D}")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--r", type=_positive, required=True)
        p.add_argument("--D", type=_positive, required=True)
        p.add_argument("--eval", type=_point, dest="point", help="evaluate at x_1,...,x_D")
        if name == "f-poly":
            p.add_argument("--closed-form", action="store_true", help="r = 1 closed form instead")
        if name == "g-poly":
            p.add_argument("--bar", action="store_true")
            p.add_argument("--divided-differences", action="store_true",
                           help="build from the divided-difference determinant")

    p = sub.add_parser("verify", parents=[common], help="check identities and conjectures")
    p.add_argument("--identity", default="all", choices=("all",) + tuple(IDENTITIES))
    p.add_argument("--max-r", type=_positive)
    p.add_argument("--max-D", type=_nonneg)
    p.add_argument("--max-rD", type=_positive)
    return parser


# ---- output -----------------------------------------------------------------

def _csv(rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _poly_csv(p: MultiPoly) -> list[list[str]]:
    rows = [[f"e{i + 1}" for i in range(p.nvars)] + ["coeff"]]
    for e, c in p.sorted_terms():
        rows.append([str(k) for k in e] + [format_rational(c)])
    return rows


def _emit(args, payload: Any, rows: Sequence[Sequence[Any]]) -> None:
    text = _csv(rows) if args.format == "csv" else json.dumps(payload, indent=2) + "\n"
    if args.output:
        path = Path(args.output)
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base and not path.is_absolute():
            path = Path(base) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


def _emit_scalar(args, value) -> None:
    s = format_rational(value)
    _emit(args, s, [["value"], [s]])


# ---- handlers -----------------------------------------------------------------

def _spec(args) -> PartitionSpec:
    try:
        return PartitionSpec(args.a, args.D or 0)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _numeric_guard(args, size: int) -> None:
    if size > NUMERIC_GUARD and not args.force:
        raise UsageError(f"matrix order {size} exceeds the numeric guard {NUMERIC_GUARD}; use --force")


def _symbolic_guard(args) -> None:
    if args.r * args.D > dp.SYMBOLIC_GUARD and not args.force:
        raise UsageError(f"symbolic expansion needs r*D <= {dp.SYMBOLIC_GUARD}; use --force")


def cmd_bernoulli(args) -> int:
    if args.x is not None:
        _emit_scalar(args, bernoulli_poly_eval(args.j, args.x))
    elif args.poly:
        coeffs = [format_rational(c) for c in bernoulli_poly(args.j).coeffs]
        _emit(args, coeffs, [["k", "coeff"]] + [[str(k), c] for k, c in enumerate(coeffs)])
    else:
        _emit_scalar(args, bernoulli_number(args.j))
    return 0


def cmd_barnes(args) -> int:
    _emit_scalar(args, bernoulli_barnes_number(args.j, args.a))
    return 0


_ROUTES = {
    "oracle": quasi_from_oracle,
    "delta": quasi_from_delta_system,
    "delta-bar": quasi_from_deltabar_system,
    "cramer": quasi_from_delta_cramer,
}


def cmd_partition_eval(args) -> int:
    spec = _spec(args)
    if args.route == "oracle":
        value = p_oracle(spec, args.n)
    else:
        _numeric_guard(args, spec.r * spec.D)
        value = eval_quasi(_ROUTES[args.route](spec), args.n)
    _emit_scalar(args, value)
    return 0


def cmd_partition_quasi(args) -> int:
    spec = _spec(args)
    if args.route != "oracle":
        _numeric_guard(args, spec.r * spec.D)
    q = _ROUTES[args.route](spec)
    _emit(args, q.to_json(), q.to_csv_rows())
    return 0


def _cmd_delta(args, bar: bool) -> int:
    if args.route == "poly":
        _symbolic_guard(args)
        value = (dp.delta_bar_via_Fbar if bar else dp.delta_via_F)(args.r, args.D, force=args.force)
    else:
        _numeric_guard(args, args.r * args.D)
        value = (dp.delta_bar if bar else dp.delta)(args.r, args.D)
    if not args.matrix:
        _emit_scalar(args, value)
        return 0
    m = (dp.build_delta_bar_matrix if bar else dp.build_delta_matrix)(args.r, args.D)
    rows = [[format_rational(x) for x in m.row(i)] for i in range(m.rows)]
    _emit(args, {"value": format_rational(value), "matrix": rows}, rows)
    return 0


def _cmd_poly(args, build) -> int:
    _symbolic_guard(args)
    p = build()
    if args.point is not None:
        if len(args.point) != p.nvars:
            raise UsageError(f"--eval needs {p.nvars} coordinates")
        _emit_scalar(args, mp_eval(p, args.point))
    else:
        _emit(args, p.to_json(), _poly_csv(p))
    return 0


def cmd_f_poly(args) -> int:
    if args.closed_form:
        if args.r != 1:
            raise UsageError("the closed form exists for r = 1 only")
        return _cmd_poly(args, lambda: dp.F1_closed_form(args.D))
    return _cmd_poly(args, lambda: dp.F_poly(args.r, args.D, args.force))


def cmd_g_poly(args) -> int:
    if args.bar and args.D < 2:
        raise UsageError("G-bar needs D >= 2")
    if args.bar:
        build = dp.Gbar_poly_divided_difference if args.divided_differences else dp.Gbar_poly
    else:
        build = dp.G_poly_divided_difference if args.divided_differences else dp.G_poly
    return _cmd_poly(args, lambda: build(args.r, args.D, args.force))


def cmd_fbar_poly(args) -> int:
    return _cmd_poly(args, lambda: dp.Fbar_poly(args.r, args.D, args.force))


def cmd_verify(args) -> int:
    params = dict(max_r=args.max_r, max_D=args.max_D, max_rD=args.max_rD, force=args.force)
    reports = run_all(**params) if args.identity == "all" else run_identity(args.identity, **params)
    payload = []
    rows = [["identity", "verdict", "ratio", "flag"]]
    for rep in reports:
        item = rep.to_json()
        flag = ""
        if is_known_erratum(rep) and rep.verdict is dp.Verdict.MISMATCH:
            flag = "erratum"
        elif rep.verdict is dp.Verdict.EQUAL_UP_TO_SIGN:
            flag = "sign"
        if flag:
            item["flag"] = flag
        payload.append(item)
        rows.append([rep.identity_name, rep.verdict.value,
                     "" if rep.ratio is None else format_rational(rep.ratio), flag])
    _emit(args, payload, rows)
    status = exit_status(reports)
    flagged = sum(1 for row in rows[1:] if row[3])
    print(f"{len(reports)} reports, {flagged} flagged, exit {status}", file=sys.stderr)
    return status


HANDLERS = {
    "bernoulli": cmd_bernoulli,
    "barnes": cmd_barnes,
    "partition-eval": cmd_partition_eval,
    "partition-quasi": cmd_partition_quasi,
    "delta": lambda a: _cmd_delta(a, bar=False),
    "delta-bar": lambda a: _cmd_delta(a, bar=True),
    "f-poly": cmd_f_poly,
    "g-poly": cmd_g_poly,
    "fbar-poly": cmd_fbar_poly,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return HANDLERS[args.command](args)
    except (UsageError, dp.GuardError) as exc:
        print(f"partdet: error: {exc}", file=sys.stderr)
        return 2
    except (SingularMatrixError, NotDivisibleError, ArithmeticError) as exc:
        print(f"partdet: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
