import argparse
import csv
import io
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from config.settings import settings
from src.models.report_models import SUITE_NAMES, CoverReport, RunConfig
from src.modules.catalog import build_fpm
from src.modules.cover import cover_report, omega_annihilation_search
from src.modules.tensor import certify_bounded, weight_dim_rows
from src.storage.report_store import ReportStore
from src.utils.errors import CapExceededError, InvalidConfigError, InvalidWeightError, SpecParseError, WittError
from src.utils.helpers import report_filename
from src.utils.logger import setup_logger
from src.verify.suites import run_suite

logger = setup_logger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

USAGE_ERRORS = (InvalidConfigError, SpecParseError, CapExceededError, InvalidWeightError, ValidationError)


def parse_specialization(text: Optional[str]) -> dict[str, Fraction]:
    """
    "lambda1=1/2,g2=1/3" -> {"lambda1": 1/2, "g2": 1/3}.

    Raises:
        SpecParseError: On a token without "=" or a non-rational value
    """
    values: dict[str, Fraction] = {}
    if not text:
        return values
    for token in text.split(","):
        name, sep, value = token.partition("=")
        if not sep:
            raise SpecParseError(f"specialization '{token}' is not name=value")
        try:
            values[name.strip()] = Fraction(value.strip())
        except ValueError as e:
            raise SpecParseError(f"bad rational in '{token}'") from e
    return values


def _run_config(args: argparse.Namespace, suite: Optional[str] = None) -> RunConfig:
    fields = {
        "m": args.m, "n": args.n, "degree": args.deg, "window": args.window,
        "rmax": args.rmax, "seed": args.seed, "suite": suite, "out": args.out,
    }
    if getattr(args, "samples", None) is not None:
        fields["samples"] = args.samples
    return RunConfig(**{k: v for k, v in fields.items() if v is not None})


def _fpm(args: argparse.Namespace, cfg: RunConfig):
    return build_fpm(
        args.p_spec, args.v1, args.v2, cfg.m, cfg.n, cfg.window,
        specialize=parse_specialization(args.specialize),
    )


def _rows_csv(rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(["weight", "dim", "reliable"])
    for row in rows:
        writer.writerow([" ".join(row.weight), row.dim, row.reliable])
    return buffer.getvalue()


def _emit_table(args: argparse.Namespace, cfg: RunConfig, kind: str, rows, certificate) -> None:
    if cfg.out is None:
        print(_rows_csv(rows) if args.format == "csv" else certificate.model_dump_json(indent=2))
        return
    store = ReportStore()
    stem = Path(cfg.out).stem if cfg.out else report_filename(kind, cfg.m, cfg.n, None)
    store.save_csv(f"{stem}.csv", ["weight", "dim", "reliable"], [[" ".join(r.weight), r.dim, r.reliable] for r in rows])
    store.save_json(f"{stem}.json", certificate)


def _cover(F, cfg: RunConfig) -> CoverReport:
    search = omega_annihilation_search(F, cfg.rmax, cfg.samples, cfg.seed)
    report = cover_report(F, search.minimal_r, samples=cfg.samples, seed=cfg.seed)
    report.annihilation = search
    return report


def _cover_ok(report: CoverReport) -> bool:
    return (
        report.minimal_r is not None
        and report.b_spanning
        and report.relation_failed == 0
        and report.theta_failed == 0
        and report.stability_failed == 0
    )


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _run_config(args, args.suite)
    report = run_suite(cfg)
    if cfg.out is not None:
        ReportStore().save_json(cfg.out or report_filename(cfg.suite, cfg.m, cfg.n), report)
    else:
        print(report.model_dump_json(indent=2))
    if report.counterexample is not None:
        logger.error(f"First counterexample: {report.counterexample.parameters}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_table(args: argparse.Namespace) -> int:
    cfg = _run_config(args)
    F = _fpm(args, cfg)
    if args.kind == "fpm-dims":
        certificate = certify_bounded(F)
        _emit_table(args, cfg, args.kind, weight_dim_rows(F), certificate)
        return EXIT_OK if certificate.verdict == "bounded" else EXIT_FAIL
    report = _cover(F, cfg)
    _emit_table(args, cfg, args.kind, report.cover_dims, report)
    return EXIT_OK if _cover_ok(report) else EXIT_FAIL


def cmd_fpm_build(args: argparse.Namespace) -> int:
    args.kind = "fpm-dims"
    return cmd_table(args)


def cmd_cover(args: argparse.Namespace) -> int:
    cfg = _run_config(args)
    F = _fpm(args, cfg)
    report = _cover(F, cfg)
    if cfg.out is not None:
        ReportStore().save_json(cfg.out or report_filename("cover", cfg.m, cfg.n), report)
    else:
        print(report.model_dump_json(indent=2))
    return EXIT_OK if _cover_ok(report) else EXIT_FAIL


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", type=int, default=1, help="Number of even variables")
    parser.add_argument("--n", type=int, default=1, help="Number of odd variables")
    parser.add_argument("--deg", type=int, default=None, help="Degree bound for Witt letters")
    parser.add_argument("--window", type=int, default=None, help="Window half-width")
    parser.add_argument("--rmax", type=int, default=None, help="Largest omega order searched")
    parser.add_argument("--seed", type=int, default=None, help="Seed for sampled suites")
    parser.add_argument("--samples", type=int, default=None, help="Samples drawn by sampled suites")
    parser.add_argument(
        "--out", nargs="?", const="", default=None,
        help=f"Write into {settings.report_dir}; bare --out picks a file name",
    )
    parser.add_argument("--format", choices=["json", "csv"], default="json", help="Stdout format")


def _add_module_specs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p-spec", default=None, help='Weyl factors, e.g. "P,L(lambda1)"')
    parser.add_argument("--v1", default="trivial", help="gl_m highest weight")
    parser.add_argument("--v2", default="trivial", help="gl_n highest weight or laurent(...)")
    parser.add_argument("--specialize", default=None, help='Rational values for shifts, e.g. "lambda1=1/2"')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Exact computations for Witt superalgebra modules")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Run an identity suite")
    verify.add_argument("suite", choices=SUITE_NAMES)
    _add_common(verify)
    verify.set_defaults(handler=cmd_verify)

    table = commands.add_parser("table", help="Weight dimension tables")
    table.add_argument("kind", choices=["fpm-dims", "cover-dims"])
    _add_common(table)
    _add_module_specs(table)
    table.set_defaults(handler=cmd_table)

    fpm = commands.add_parser("fpm", help="Tensor modules F(P, M)")
    fpm_commands = fpm.add_subparsers(dest="fpm_command", required=True)
    build = fpm_commands.add_parser("build", help="Build F(P, M) and certify boundedness")
    _add_common(build)
    _add_module_specs(build)
    build.set_defaults(handler=cmd_fpm_build)

    cover = commands.add_parser("cover", help="Omega annihilation and the A-cover")
    _add_common(cover)
    _add_module_specs(cover)
    cover.set_defaults(handler=cmd_cover)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        return args.handler(args)
    except USAGE_ERRORS as e:
        logger.error(f"Usage error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except WittError as e:
        logger.error(f"Computation failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
