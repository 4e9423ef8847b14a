"""Command-line entry point: tables, genera, model checks and band invariants.

Every subcommand prints a text rendering by default; ``--format json`` wraps
the result in an envelope ``{command, params, result, format_version}``.
Exit status is 0 on success, 1 when a computation or verification fails and
2 for bad arguments or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import FORMAT_VERSION, golden, invariants, models, verify
from .charclass import (
    UNIT_DEGREE,
    CharacteristicNumbers,
    NonIntegralIndex,
    ahat_series,
    evaluate_genus,
    integrality_check,
    parse_monomial,
    todd_series,
)
from .clifford import CliffordSignature, classify_real

FORMATS = ("text", "json", "csv")


class UsageError(Exception):
    """Bad input discovered after argument parsing; exits with status 2."""


class Failure(Exception):
    """A computation or check failed; exits with status 1."""


def _emit(args, result, text: str, csv_text: str | None = None) -> None:
    fmt = args.format or "text"
    if fmt == "json":
        params = {k: v for k, v in sorted(vars(args).items()) if k not in ("format", "func", "command")}
        envelope = {"command": args.command, "params": params, "result": result,
                    "format_version": FORMAT_VERSION}
        sys.stdout.write(json.dumps(envelope, indent=2) + "\n")
    elif fmt == "csv":
        if csv_text is None:
            raise UsageError(f"{args.command} has no csv output")
        sys.stdout.write(csv_text)
    else:
        sys.stdout.write(text)


def _family(args) -> str:
    return "C" if getattr(args, "complex", False) else "R"


def _table(args, kind: str, payload: dict) -> None:
    header, rows = golden.tabulate(kind, payload)
    _emit(args, payload, golden.render_grid(header, rows), golden.render_csv(header, rows))


# table subcommands

def cmd_chessboard(args):
    if args.rows < 1 or args.cols < 1:
        raise UsageError("--rows and --cols must be positive")
    _table(args, "chessboard", golden.chessboard_payload(args.rows, args.cols))


def cmd_classify(args):
    if args.p < 0 or args.q < 0:
        raise UsageError("--p and --q must be non-negative")
    alg = classify_real(CliffordSignature(args.p, args.q))
    _emit(args, {"p": args.p, "q": args.q, "algebra": str(alg)}, f"{alg}\n")


def cmd_groups(args):
    _table(args, "groups", golden.groups_payload(_family(args)))


def cmd_ko_table(args):
    _table(args, "ko-table", golden.ko_table_payload(_family(args)))


def cmd_index_table(args):
    _table(args, "index-table", golden.index_table_payload(_family(args)))


def cmd_periodic_table(args):
    _table(args, "periodic-table", golden.periodic_table_payload())


# genus

def _read_numbers(path: str, var: str) -> CharacteristicNumbers:
    try:
        mapping = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if not isinstance(mapping, dict) or not mapping:
        raise UsageError(f"{path} must hold a non-empty object of monomial -> number")
    try:
        weights = set()
        for key in mapping:
            kind, part = parse_monomial(key)
            if kind != var:
                raise UsageError(f"monomial {key!r} does not belong to the {var} classes")
            weights.add(sum(part))
        if len(weights) != 1:
            raise UsageError("all monomials must have the same degree")
        return CharacteristicNumbers.from_mapping(UNIT_DEGREE[var] * weights.pop(), mapping)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_genus(args):
    build = ahat_series if args.series == "ahat" else todd_series
    var = "p" if args.series == "ahat" else "c"
    nums = _read_numbers(args.eval, var) if args.eval else None
    cutoff = max(args.degree, nums.dimension if nums else 0)
    try:
        series = build(cutoff)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = series.to_payload()
    text = f"{series}\n"
    if nums is not None:
        value = evaluate_genus(series, nums)
        result["evaluation"] = {"dimension": nums.dimension, "value": str(value)}
        text += f"value on {nums.dimension}-manifold: {value}\n"
        if args.k is not None:
            try:
                index = integrality_check(args.series, nums, args.k)
            except NonIntegralIndex as exc:
                raise Failure(str(exc)) from exc
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            result["evaluation"]["k"] = args.k
            result["evaluation"]["index"] = index
            text += f"index for k = {args.k}: {index}\n"
    _emit(args, result, text)


# models and invariants

def _load(path: str):
    try:
        return models.load_model(path)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        raise UsageError(f"cannot load model {path}: {exc}") from exc


def cmd_model_check(args):
    model = _load(args.file)
    op = model.symmetries.get(args.symmetry)
    if op is None:
        raise UsageError(f"model declares no {args.symmetry} operator")
    try:
        report = models.check_antiunitary(model, op, grid=args.grid)
    except models.DimensionMismatch as exc:
        raise UsageError(str(exc)) from exc
    result = report.to_dict()
    status = "holds" if report.passed else "violated"
    text = (f"{args.symmetry} {status}: max deviation {report.max_deviation:.3e}, "
            f"square {report.square:+d} (deviation {report.square_deviation:.3e})\n")
    try:
        az = models.detect_az_class(model, model.symmetries.get("T"), model.symmetries.get("C"), args.grid)
        result["az_class"] = az.label
        text += f"class {az.label}\n"
    except models.AmbiguousClass as exc:
        result["az_class"] = None
        text += f"class undetermined: {exc}\n"
    _emit(args, result, text)
    if not report.passed:
        raise Failure(f"{args.symmetry} symmetry violated (deviation {report.max_deviation:.3e})")


def _occupied(text):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--occupied expects comma-separated band indices, got {text!r}") from exc


def cmd_chern(args):
    if args.file:
        model = _load(args.file)
    else:
        model = models.haldane(args.t1, args.t2, args.phi, args.M)
    try:
        field = invariants.berry_field(model, _occupied(args.occupied), n=args.grid)
        c = field.chern()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = {"chern": c, "gap_min": round(field.gap_min, 12), "grid": args.grid}
    _emit(args, result, f"{c}\n")


def cmd_z2(args):
    if args.file:
        model = _load(args.file)
    else:
        model = models.kane_mele(args.t, args.lso, args.lr, args.M)
    try:
        value = invariants.z2_invariant(model, n=args.grid)
    except invariants.SymmetryViolated as exc:
        raise Failure(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, {"z2": value, "grid": args.grid}, f"{value}\n")


def cmd_phase_diagram(args):
    pd = invariants.phase_diagram(args.t1, args.t2, resolution=args.resolution, n=args.grid)
    csv_text = pd.to_csv()
    closed = int(pd.closed.sum())
    mismatches = pd.boundary_mismatches()
    if args.out:
        Path(args.out).write_text(csv_text)
    summary = {"resolution": args.resolution, "grid": args.grid, "gap_closed_cells": closed,
               "boundary_mismatches": len(mismatches), "out": args.out}
    text = (f"{args.resolution}x{args.resolution} cells, {closed} gap-closed, "
            f"{len(mismatches)} off the analytic boundary\n")
    if args.out:
        text = f"wrote {args.out}: " + text
    elif (args.format or "text") == "text":
        text = csv_text
    _emit(args, summary, text, csv_text)


def cmd_verify_all(args):
    checks, elapsed = verify.run_all()
    failed = [c for c in checks if not c.passed]
    lines = "".join(c.line() + "\n" for c in checks)
    result = {"checks": [{"suite": c.suite, "name": c.name, "passed": c.passed, "detail": c.detail}
                         for c in checks],
              "passed": not failed}
    text = lines + f"{len(checks) - len(failed)}/{len(checks)} checks passed in {elapsed:.1f}s\n"
    _emit(args, result, text)
    if failed:
        raise Failure(failed[0].line())


# parser

def _family_flags(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--real", action="store_true", help="real family (default)")
    g.add_argument("--complex", action="store_true", help="complex family")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS,
                        help="output format (default text)")

    parser = argparse.ArgumentParser(prog="cliffordtopo", parents=[common],
                                     description="Clifford algebras, K-theory tables and band topology.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("chessboard", cmd_chessboard, "table of real Clifford algebras")
    p.add_argument("--rows", type=int, default=8)
    p.add_argument("--cols", type=int, default=8)

    p = add("classify", cmd_classify, "classify one real Clifford algebra")
    p.add_argument("--p", type=int, required=True, help="generators squaring to -1")
    p.add_argument("--q", type=int, required=True, help="generators squaring to +1")

    p = add("groups", cmd_groups, "module groups, restriction quotients and K-groups")
    _family_flags(p)
    p = add("ko-table", cmd_ko_table, "K-groups of a point indexed by (s, n)")
    _family_flags(p)
    p = add("index-table", cmd_index_table, "index type of Clifford-linear Dirac operators")
    _family_flags(p)
    add("periodic-table", cmd_periodic_table, "ten-fold periodic table")

    p = add("genus", cmd_genus, "A-hat or Todd series, optionally evaluated")
    p.add_argument("--series", choices=("ahat", "todd"), required=True)
    p.add_argument("--degree", type=int, required=True, help="cutoff in real cohomological degree")
    p.add_argument("--eval", metavar="FILE", help="JSON object of characteristic numbers")
    p.add_argument("--k", type=int, help="Clifford degree for the integrality rule (needs --eval)")

    p = sub.add_parser("model", help="model file utilities")
    msub = p.add_subparsers(dest="action", required=True)
    c = msub.add_parser("check", parents=[common], help="test a declared antiunitary symmetry")
    c.set_defaults(func=cmd_model_check)
    c.add_argument("--file", required=True)
    c.add_argument("--symmetry", choices=("T", "C"), required=True)
    c.add_argument("--grid", type=int, default=12)

    p = add("chern", cmd_chern, "lattice Chern number")
    p.add_argument("--model", choices=("haldane",), default="haldane")
    p.add_argument("--file", help="JSON model instead of the built-in Haldane model")
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--t2", type=float, default=0.2)
    p.add_argument("--phi", type=float, default=math.pi / 2)
    p.add_argument("--M", type=float, default=0.0)
    p.add_argument("--grid", type=int, default=24)
    p.add_argument("--occupied", help="comma-separated band indices (default lower half)")

    p = add("z2", cmd_z2, "time-reversal Z2 invariant")
    p.add_argument("--model", choices=("kane-mele",), default="kane-mele")
    p.add_argument("--file", help="JSON model with a T operator instead of the built-in model")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--lso", type=float, default=0.06)
    p.add_argument("--lr", type=float, default=0.0)
    p.add_argument("--M", type=float, default=0.1)
    p.add_argument("--grid", type=int, default=24)

    p = add("phase-diagram", cmd_phase_diagram, "Haldane Chern number over (phi, M/t2)")
    p.add_argument("--model", choices=("haldane",), default="haldane")
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--t2", type=float, default=0.2)
    p.add_argument("--resolution", type=int, default=41)
    p.add_argument("--grid", type=int, default=24)
    p.add_argument("--out", help="CSV destination")

    add("verify-all", cmd_verify_all, "run every consistency suite")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "format"):
        args.format = None
    if getattr(args, "action", None):
        args.command = f"{args.command} {args.action}"
        del args.action
    try:
        args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (Failure, invariants.GapClosure, invariants.NonIntegral) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
