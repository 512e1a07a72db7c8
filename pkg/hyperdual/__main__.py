"""Command line tool for the hyperdual library."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from argparse import RawTextHelpFormatter
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from hyperdual.drivers import DerivativeReport, hessian, jacobian
from hyperdual.exception import DomainError
from hyperdual.expr import ParseDiagnostic, evaluate, to_diff_function, try_parse
from hyperdual.field import Scalar, strict_domain
from hyperdual.oracle import fd_hessian, fd_jacobian, max_relative_deviation
from hyperdual.util import CLI_CONFIG_FP, load_cli_config, parse_point

try:  # Python < 3.10 (backport)
    from importlib_metadata import PackageNotFoundError, version  # type: ignore
except ImportError:
    from importlib.metadata import PackageNotFoundError, version  # type: ignore [assignment]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_ARITY = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4

EXAMPLES = """
Example usage:

hyperdual --expr "x1 + x2^2*x3 - x1/x3 + x2^x1" --point "1+1i, 2.3, 3.141592653589793"
hyperdual --expr "x1" --point "5" --jacobian
hyperdual --expr "(x1+sqrt(x1))/sqrt(x1)" --point "4" --hessian --verify
hyperdual --expr "x1*x2" --point "2,3" --format csv
hyperdual --expr "log(x1)" --point "-1" --no-strict

Exit codes:
    0: success
    1: the expression or the point cannot be parsed
    2: the number of coordinates differs from the number of variables
    3: a function is evaluated outside of its domain
    4: the derivatives deviate from finite differences by more than the threshold,
       or the finite difference stencil leaves the domain of a function

Defaults for --format, --strict, --verify-threshold and --parallel can be stored in
~/.hyperdual/hyperdual_cli.json, for example {"format": "csv", "strict": false}.
"""


@dataclass(frozen=True)
class CliRequest:
    """Everything the command line tool needs for one evaluation."""

    expression: str
    point: str
    jacobian: bool = False
    hessian: bool = False
    verify: bool = False
    format: str = "json"
    strict: bool = True
    parallel: bool = False
    verify_threshold: float = 1e-4
    dry_run: bool = False


VERIFY_KEYS = ("max_rel_dev_jacobian", "max_rel_dev_hessian")


def _float(value: float) -> Union[float, str]:
    # JSON has no literal for non-finite numbers.
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    return value


def _number(value: Scalar) -> dict[str, Union[float, str]]:
    return {"re": _float(float(value.real)), "im": _float(float(value.imag))}


def serialize(
    report: DerivativeReport, fmt: str = "json", verify: Optional[dict] = None
) -> str:
    """Write a derivative report as JSON or CSV.

    Every number is written as a real and an imaginary part, also for real reports,
    with the shortest decimal representation that reads back to the same double.
    Non-finite parts are written as the strings "NaN", "Infinity" and "-Infinity",
    so that the JSON output is valid for strict parsers.

    Parameters
    ----------
    report:
        The report to write.
    fmt, optional:
        Either "json" or "csv", by default "json".
    verify, optional:
        Deviations from finite differences, with the keys "max_rel_dev_jacobian" and
        "max_rel_dev_hessian".

    Returns
    -------
        The serialized report.

    Raises
    ------
    ValueError:
        If the format is unknown.

    """
    if verify is not None:
        verify = {
            key: None if deviation is None else _float(deviation)
            for key, deviation in verify.items()
        }
    if fmt == "json":
        content = {
            "value": _number(report.value),
            "jacobian": [_number(z) for z in report.jacobian],
            "hessian": None if report.hessian is None else [
                [_number(z) for z in row] for row in report.hessian
            ],
            "invocations": report.invocations,
            "verify": verify,
        }
        return json.dumps(content, indent=2, allow_nan=False) + "\n"
    if fmt != "csv":
        raise ValueError(f"Unknown output format '{fmt}', choose json or csv.")
    handle = io.StringIO()
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(["kind", "j", "k", "re", "im"])
    writer.writerow(["value", "", "", *_number(report.value).values()])
    for j, z in enumerate(report.jacobian, 1):
        writer.writerow(["jacobian", j, "", *_number(z).values()])
    if report.hessian is not None:
        for j, row in enumerate(report.hessian, 1):
            for k, z in enumerate(row, 1):
                writer.writerow(["hessian", j, k, *_number(z).values()])
    writer.writerow(["invocations", "", "", float(report.invocations), 0.0])
    for key, deviation in (verify or {}).items():
        if deviation is not None:
            writer.writerow([key, "", "", deviation, 0.0])
    return handle.getvalue()


def _verify(ast, point: list, report: DerivativeReport) -> dict:
    def plain(x):
        return evaluate(ast, x)

    deviations: dict[str, Optional[float]] = {
        "max_rel_dev_jacobian": max_relative_deviation(report.jacobian, fd_jacobian(plain, point)),
        "max_rel_dev_hessian": None,
    }
    if report.hessian is not None:
        deviations["max_rel_dev_hessian"] = max_relative_deviation(
            report.hessian, fd_hessian(plain, point)
        )
    logger.info("Deviations from finite differences: %s", deviations)
    return deviations


def run(request: CliRequest) -> int:  # pylint: disable=too-many-return-statements
    """Evaluate the derivatives for a request and print the report.

    Parameters
    ----------
    request:
        Expression, point and options.

    Returns
    -------
        The exit code, 0 on success.

    """
    ast = try_parse(request.expression)
    if isinstance(ast, ParseDiagnostic):
        print(f"Error: cannot parse expression, {ast}.", file=sys.stderr)
        return EXIT_PARSE
    try:
        point = parse_point(request.point)
    except ValueError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if len(point) != ast.arity:
        print(
            f"Error: the expression has {ast.arity} variables, but the point has "
            f"{len(point)} coordinates.",
            file=sys.stderr,
        )
        return EXIT_ARITY

    driver = jacobian if request.jacobian and not request.hessian else hessian
    options = {"parallel": request.parallel}
    stencil_error = None
    verify = None
    with strict_domain(request.strict):
        try:
            if request.dry_run:
                plan = driver(to_diff_function(ast), point, dry_run=True)
                plan.print_summary()  # type: ignore[union-attr]
                return EXIT_OK
            report = driver(to_diff_function(ast), point, **options)
        except DomainError as exc:
            print(f"Error: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
        if request.verify:
            try:
                verify = _verify(ast, point, report)
            except DomainError as exc:
                logger.info("Finite differences failed: %s", exc)
                stencil_error = exc
                verify = dict.fromkeys(VERIFY_KEYS)

    sys.stdout.write(serialize(report, request.format, verify))
    if stencil_error is not None:
        print(
            f"Error: cannot verify, the finite difference stencil leaves the domain: "
            f"{stencil_error}",
            file=sys.stderr,
        )
        return EXIT_VERIFY
    if verify is not None:
        threshold = request.verify_threshold
        failed = [dev for dev in verify.values() if dev is not None and not dev <= threshold]
        if failed:
            print(
                f"Error: deviation {failed[0]} from finite differences exceeds "
                f"{request.verify_threshold}.",
                file=sys.stderr,
            )
            return EXIT_VERIFY
    return EXIT_OK


def _package_version() -> str:
    try:
        return version("hyperdual")
    except PackageNotFoundError:
        return "unknown"


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperdual",
        description="Exact Jacobian and Hessian of an expression with hyper-dual numbers.",
        epilog=EXAMPLES,
        formatter_class=RawTextHelpFormatter,
    )
    parser.add_argument(
        "-v", "--version",
        action="version",
        version=f"hyperdual version {_package_version()}",
    )
    parser.add_argument(
        "--expr",
        help="Expression in the variables x1, x2, ..., for example \"x1*sin(x2)\".",
        type=str,
        required=True,
    )
    parser.add_argument(
        "--point",
        help="Comma separated coordinates, real or complex such as 1+2i.",
        type=str,
        required=True,
    )
    parser.add_argument(
        "--jacobian",
        help="Compute the Jacobian (n calls).",
        action="store_true",
    )
    parser.add_argument(
        "--hessian",
        help="Compute the Hessian and Jacobian (n(n+1)/2 calls). Default without --jacobian.",
        action="store_true",
    )
    parser.add_argument(
        "--format",
        help="Output format, by default json.",
        choices=["json", "csv"],
        default=None,
    )
    parser.add_argument(
        "--verify",
        help="Compare with central finite differences.",
        action="store_true",
    )
    parser.add_argument(
        "--verify-threshold",
        help="Largest allowed relative deviation for --verify, by default 1e-4.",
        type=float,
        default=None,
    )
    parser.add_argument(
        "--strict",
        help="Fail when a function is evaluated outside its domain, instead of continuing "
        "with inf and nan (default: strict).",
        action=argparse.BooleanOptionalAction,
        default=None,
    )
    parser.add_argument(
        "--parallel",
        help="Evaluate the seeded calls in a thread pool.",
        action=argparse.BooleanOptionalAction,
        default=None,
    )
    parser.add_argument(
        "--dry-run",
        help="Do not evaluate, but list the calls that would be made.",
        action="store_true",
    )
    parser.add_argument(
        "--verbose",
        help="Log progress to standard error.",
        action="store_true",
    )
    parser.add_argument(
        "--config",
        help="Configuration file with defaults, by default ~/.hyperdual/hyperdual_cli.json.",
        type=Path,
        default=CLI_CONFIG_FP,
    )
    return parser


def _pick(value, default):
    return default if value is None else value


def main(argv: Union[None, list[str]] = None) -> None:
    """Command line entry point."""
    args = _parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG, stream=sys.stderr, format="%(levelname)s:%(name)s: %(message)s"
        )
    config = load_cli_config(args.config)
    request = CliRequest(
        expression=args.expr,
        point=args.point,
        jacobian=args.jacobian,
        hessian=args.hessian,
        verify=args.verify,
        format=_pick(args.format, config["format"]),
        strict=_pick(args.strict, config["strict"]),
        parallel=_pick(args.parallel, config["parallel"]),
        verify_threshold=_pick(args.verify_threshold, config["verify_threshold"]),
        dry_run=args.dry_run,
    )
    sys.exit(run(request))


if __name__ == "__main__":
    main()
