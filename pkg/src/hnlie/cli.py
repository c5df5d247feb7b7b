"""Command-line front end.

Exit codes: 0 on success with all verifications agreeing, 1 for usage or
input errors, 2 when a verification suite records an unexpected
disagreement (documented annotations do not trigger it).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algebra import (
    AlgebraFileError,
    DomainViolationError,
    LieAlgebra,
    UnboundParameterError,
    builtin,
    check_jacobi,
    load_algebra,
)
from .classify import classify_tensors
from .connection import fundamental_tensors, koszul_connection
from .curvature import curvature_report
from .exprparse import ExprError, parse_scalar
from .regions import SamplingError
from .report import (
    Report,
    classify_payload,
    curvature_payload,
    describe_inputs,
    emit,
)
from .structure import standard_structure
from .verify import class_table_report, curvature_claims_report, family_table_report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(1)


class CliError(Exception):
    pass


def _add_output_options(parser):
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--output", metavar="PATH", help="write the report to a file")


def _add_algebra_options(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--family", metavar="ID", help="builtin family g4_1 .. g4_12")
    group.add_argument("--file", metavar="PATH", help="algebra description file")
    parser.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="NAME=EXPR",
        help="bind a family parameter to an exact value, e.g. --param q=sqrt(3)/6",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hnlie", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser(
        "classify", help="class labels of (L, H, G) per structure"
    )
    _add_algebra_options(p_classify)
    _add_output_options(p_classify)

    p_curv = sub.add_parser("curvature", help="full curvature package")
    _add_algebra_options(p_curv)
    _add_output_options(p_curv)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument(
        "suite", choices=["table2", "theorem5", "components"],
        help="which expectation table to verify",
    )
    p_verify.add_argument("--samples", type=int, default=5)
    p_verify.add_argument("--seed", type=int, default=0)
    _add_output_options(p_verify)
    return parser


def _parse_params(raw: list[str]) -> dict:
    params = {}
    for item in raw:
        name, sep, text = item.partition("=")
        if not sep or not name:
            raise CliError(f"--param expects NAME=EXPR, got {item!r}")
        params[name] = parse_scalar(text)
    return params


def _load_input(args) -> tuple[LieAlgebra, dict]:
    if args.file:
        if args.param:
            raise CliError("--param applies to --family input only")
        text = Path(args.file).read_text(encoding="utf-8")
        algebra = load_algebra(text)
        inputs = describe_inputs(None, algebra.bindings, args.file, algebra)
    else:
        params = _parse_params(args.param)
        algebra = builtin(args.family, params)
        inputs = describe_inputs(args.family, params, None, algebra)
    jacobi = check_jacobi(algebra)
    if not jacobi.ok:
        raise CliError(
            "input is not a Lie algebra: " + "; ".join(jacobi.violations)
        )
    return algebra, inputs


def _deliver(report: Report, args) -> None:
    text = emit(report, args.format)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    h = standard_structure()
    try:
        if args.command == "classify":
            algebra, inputs = _load_input(args)
            conn = koszul_connection(algebra, h)
            ft = fundamental_tensors(conn, h)
            labels = classify_tensors(ft, h)
            report = Report(
                kind="classify", inputs=inputs, payload=classify_payload(labels, ft)
            )
            _deliver(report, args)
            return 0
        if args.command == "curvature":
            algebra, inputs = _load_input(args)
            conn = koszul_connection(algebra, h)
            rep = curvature_report(conn, algebra, h)
            report = Report(
                kind="curvature", inputs=inputs, payload=curvature_payload(rep)
            )
            _deliver(report, args)
            return 0
        # verify
        if args.samples < 1:
            raise CliError("--samples must be at least 1")
        if args.suite == "table2":
            payload = class_table_report(samples=args.samples, seed=args.seed)
            kind = "verify-table2"
            failures = payload["summary"]["mismatches"]
        elif args.suite == "theorem5":
            payload = curvature_claims_report(samples=args.samples, seed=args.seed)
            kind = "verify-theorem5"
            failures = payload["summary"]["disagreements"]
        else:
            payload = family_table_report()
            kind = "verify-components"
            failures = payload["summary"]["mismatches"]
        report = Report(
            kind=kind,
            inputs={},
            payload=payload,
            seed=args.seed if args.suite != "components" else None,
            samples=args.samples if args.suite != "components" else None,
        )
        _deliver(report, args)
        return 2 if failures else 0
    except (
        CliError,
        ExprError,
        AlgebraFileError,
        DomainViolationError,
        UnboundParameterError,
        SamplingError,
        KeyError,
        OSError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
