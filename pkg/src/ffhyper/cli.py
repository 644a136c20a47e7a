"""
The `ffhyper` command line: field dumps, single evaluations and identity sweeps.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 on success, 1 when a sweep finds a
failing tuple, 2 on usage or construction errors.
"""

import argparse
import csv
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any, TextIO

from ffhyper.character_sums import SumContext, binomial, build_context, gauss, jacobi
from ffhyper.characters import Character, parse_character
from ffhyper.classical_analogue import NonTerminatingSeriesError
from ffhyper.config import BackendName, config
from ffhyper.cyclotomic_value import (
    ConductorMismatchError,
    CycNumber,
    ExactBackendUnavailableError,
    Value,
    embed,
)
from ffhyper.finite_field import (
    FieldConstructionError,
    FieldMismatchError,
    InapplicableFieldError,
    field_from_descriptor,
    parse_field_descriptor,
)
from ffhyper.hypergeometric import fstar, hyp2f1
from ffhyper.identity_verifier import IDENTITY_IDS, UnknownIdentityError, run_sweep, verify_all
from ffhyper.models import IdentityReport, IdentitySweep

__all__ = ["build_parser", "main"]

logger = logging.getLogger(__name__)

DEFAULT_FIELDS = "5,9,13,17,25,27,29"

_USAGE_ERRORS = (
    FieldConstructionError,
    FieldMismatchError,
    InapplicableFieldError,
    ConductorMismatchError,
    ExactBackendUnavailableError,
    NonTerminatingSeriesError,
    UnknownIdentityError,
    ZeroDivisionError,
    ValueError,
)

_EVAL_PARAMETERS = {
    "gauss": ("a",),
    "jacobi": ("a", "b"),
    "binomial": ("a", "b"),
    "2f1": ("a", "b", "c"),
    "fstar": ("c", "d"),
}


def _add_backend_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--exact", dest="backend", action="store_const", const="exact", help="exact cyclotomic values")
    group.add_argument("--float", dest="backend", action="store_const", const="float", help="complex double values")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffhyper", description="Hypergeometric functions over finite fields")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    field_info = commands.add_parser("field-info", help="dump the tables of a field")
    field_info.add_argument("--field", required=True, help='field descriptor "p^n" or q')
    field_info.add_argument("--format", choices=("json", "pretty"), default="json")

    evaluate = commands.add_parser("eval", help="evaluate one character sum or hypergeometric function")
    quantities = evaluate.add_subparsers(dest="quantity", required=True)
    for quantity, names in _EVAL_PARAMETERS.items():
        sub = quantities.add_parser(quantity)
        sub.add_argument("--field", required=True, help='field descriptor "p^n" or q')
        for name in names:
            sub.add_argument(f"--{name}", required=True, help="exponent j or eps, phi, chi4, chi4bar")
        if quantity in ("2f1", "fstar"):
            sub.add_argument("--x", required=True, help='canonical element index or "g^k"')
        if quantity == "fstar":
            sub.add_argument("--form", choices=("char", "point"), default="point")
        _add_backend_flags(sub)
        sub.add_argument("--format", choices=("json", "csv", "pretty"), default="json")

    verify = commands.add_parser("verify", help="run exhaustive identity sweeps")
    target = verify.add_mutually_exclusive_group(required=True)
    target.add_argument("--identity", choices=IDENTITY_IDS)
    target.add_argument("--all", action="store_true", help="every identity over every field of --fields")
    verify.add_argument("--field", help="field of a single identity sweep")
    verify.add_argument("--fields", default=DEFAULT_FIELDS, help="comma separated fields for --all")
    verify.add_argument("--backend", choices=("exact", "float"))
    verify.add_argument("--jobs", type=int, help="worker processes, defaults to FFHYPER_JOBS or 1")
    verify.add_argument("--quartic", choices=("chi4", "chi4bar"), default="chi4")
    verify.add_argument("--n-max", type=int, default=10, help="largest n of the polynomial identity")
    verify.add_argument("--report", type=Path, help="also write the reports to this file")
    verify.add_argument("--no-timing", action="store_true", help="omit millis for byte identical output")
    return parser


def _format_value(value: Value) -> str:
    if isinstance(value, CycNumber):
        terms = []
        for i, c in enumerate(value.coeffs):
            if not c:
                continue
            terms.append(str(c) if i == 0 else f"({c})*zeta^{i}")
        return " + ".join(terms) or "0"
    return f"{value.re:.12g}{value.im:+.12g}j"


def _evaluate(ctx: SumContext, args: argparse.Namespace) -> tuple[Value, dict[str, str]]:
    field = ctx.field
    characters: dict[str, Character] = {
        name: parse_character(field, getattr(args, name)) for name in _EVAL_PARAMETERS[args.quantity]
    }
    parameters = {name: chi.name for name, chi in characters.items()}
    if args.quantity == "gauss":
        return gauss(ctx, characters["a"]), parameters
    if args.quantity == "jacobi":
        return jacobi(ctx, characters["a"], characters["b"]), parameters
    if args.quantity == "binomial":
        return binomial(ctx, characters["a"], characters["b"]), parameters
    x = field.parse_element(args.x)
    parameters["x"] = field.format_element(x)
    if args.quantity == "2f1":
        return hyp2f1(ctx, characters["a"], characters["b"], characters["c"], x), parameters
    parameters["form"] = args.form
    return fstar(ctx, characters["c"], characters["d"], x, form=args.form), parameters


def _write_eval(out: TextIO, output_format: str, record: dict[str, Any], value: Value) -> None:
    if output_format == "json":
        out.write(json.dumps(record, sort_keys=True) + "\n")
        return
    parameters = ", ".join(f"{k}={v}" for k, v in record["parameters"].items())
    if output_format == "pretty":
        out.write(f"{record['quantity']}({parameters}) over F_{record['q']} = {record['text']}\n")
        return
    approx = embed(value) if isinstance(value, CycNumber) else value
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["quantity", "field", "backend", "parameters", "re", "im"])
    writer.writerow([record["quantity"], record["field"], record["backend"], parameters, approx.re, approx.im])


def _run_field_info(args: argparse.Namespace, out: TextIO) -> int:
    field = field_from_descriptor(args.field)
    dump = field.to_dict()
    if args.format == "json":
        out.write(json.dumps(dump, sort_keys=True) + "\n")
        return 0
    out.write(f"F_{field.q} = F_{field.p}[x] / ({field.modulus}), generator g = {dump['generator']}\n")
    for k, coefficients in enumerate(dump["powers"]):
        out.write(f"g^{k} = {coefficients}, index {k + 1}, trace {dump['trace'][k + 1]}\n")
    return 0


def _run_eval(args: argparse.Namespace, out: TextIO) -> int:
    p, n = parse_field_descriptor(args.field)
    backend: BackendName = args.backend or config.backend
    ctx = build_context(p, n, backend)
    value, parameters = _evaluate(ctx, args)
    record = {
        "quantity": args.quantity,
        "field": ctx.field.descriptor,
        "q": ctx.field.q,
        "backend": backend,
        "parameters": parameters,
        "value": ctx.backend.to_json_value(value),
        "text": _format_value(value),
    }
    _write_eval(out, args.format, record, value)
    return 0


def _sweeps(args: argparse.Namespace) -> list[IdentityReport]:
    backend: BackendName = args.backend or config.backend
    if args.all:
        fields = [f.strip() for f in args.fields.split(",") if f.strip()]
        return verify_all(fields, backend=backend, jobs=args.jobs, n_max=args.n_max)
    if args.identity != "stanton" and args.field is None:
        raise ValueError(f"--identity {args.identity} needs --field")
    sweep = IdentitySweep(
        identity=args.identity,
        field=None if args.identity == "stanton" else args.field,
        backend=backend,
        variant=args.quartic if args.identity == "thm3" else None,
        n_max=args.n_max,
    )
    return [run_sweep(sweep, args.jobs)]


def _run_verify(args: argparse.Namespace, out: TextIO) -> int:
    if args.jobs is not None and args.jobs < 1:
        raise ValueError(f"--jobs must be at least 1, got {args.jobs}")
    if args.n_max < 0:
        raise ValueError(f"--n-max must be non-negative, got {args.n_max}")
    reports = _sweeps(args)
    document = json.dumps(
        [r.to_dict(include_timing=not args.no_timing) for r in reports], sort_keys=True, indent=2
    )
    out.write(document + "\n")
    if args.report is not None:
        try:
            args.report.write_text(document + "\n")
        except OSError as err:
            logger.error(f"Cannot write reports to {args.report}: {err.strerror or err}")
            return 2
        logger.info(f"Wrote {len(reports)} reports to {args.report}")
    failed = [r for r in reports if not r.ok]
    for report in failed:
        logger.error(f"{report.identity} over {report.field or 'Q'}: {report.failed} failing tuples")
    return 1 if failed else 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else 2

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    out = sys.stdout
    try:
        if args.command == "field-info":
            return _run_field_info(args, out)
        if args.command == "eval":
            return _run_eval(args, out)
        return _run_verify(args, out)
    except _USAGE_ERRORS as err:
        logger.error(str(err))
        return 2
