#!/usr/bin/env python3
"""
Command-line application for the curvature checks of the catalog metrics.

Exit codes: 0 when every asserted check passes, 1 when one fails or cannot be
evaluated, 2 on configuration errors.
"""

import argparse
import sys
import time
from typing import Optional, Sequence

from page_curvature import configure_global_logger, logger, set_log_metric
from page_curvature.commands import COMMANDS, run_command
from page_curvature.errors import ConfigError
from page_curvature.report import RunConfig, write_report

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-c", "--config", type=str, default=None, help="Configuration file (.toml or .json)")
    parser.add_argument("--metric", type=str, help="Metric selector, e.g. page, page(a=0.5), fubini-study, s4, t4")
    parser.add_argument("--a", type=float, help="Parameter of the Page family (default: the Einstein root)")
    parser.add_argument("--grid", type=int, help="Grid points per coordinate")
    parser.add_argument("--sphere-points", dest="sphere_points", type=int, help="Directions on the Λ²₋ sphere")
    parser.add_argument("--refine-iterations", dest="refine_iterations", type=int, help="Refinement sweeps")
    parser.add_argument("--fd-step", dest="fd_step", type=float, help="Finite-difference step")
    parser.add_argument("--margin", type=float, help="Distance kept from coordinate singularities")
    parser.add_argument("--seed", type=int, help="Random seed")
    parser.add_argument("--workers", type=int, help="Threads for grid evaluation")
    parser.add_argument("--out", type=str, help="Output directory")
    parser.add_argument(
        "--format",
        dest="formats",
        type=str,
        help="Comma-separated output formats among json,csv",
    )
    parser.add_argument(
        "-l",
        "--log-level",
        type=str,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default="INFO",
        help="Logging level (default: INFO)",
    )
    parser.add_argument("--log-file", type=str, default=None, help="Also write the log to this file")


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments."""
    parser = argparse.ArgumentParser(description="Numerical curvature checks for Page, Fubini–Study and friends.")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        _add_common_arguments(subparsers.add_parser(name, help=f"Run {name}"))
    return parser.parse_args(argv)


def apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    """Command-line flags take precedence over file values."""
    if args.metric is not None:
        cfg.metric = args.metric
    if args.a is not None:
        cfg.a = args.a
    if args.out is not None:
        cfg.output_dir = args.out
    if args.formats is not None:
        cfg.formats = [item.strip() for item in args.formats.split(",") if item.strip()]
    for key in ("grid", "sphere_points", "refine_iterations", "fd_step", "margin", "seed", "workers"):
        value = getattr(args, key)
        if value is not None:
            setattr(cfg.scan, key, value)
    return cfg


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    try:
        args = parse_arguments(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_CONFIG_ERROR

    configure_global_logger(level=args.log_level, log_file=args.log_file)

    try:
        cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
        apply_overrides(cfg, args)
        cfg.validate()
    except ConfigError as e:
        logger.error(f"Invalid configuration: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    set_log_metric(cfg.metric)
    logger.info(f"Running {args.command} on {cfg.metric} (output: {cfg.output_dir})")
    start = time.perf_counter()
    try:
        report = run_command(args.command, cfg)
    except ConfigError as e:
        logger.error(f"Invalid configuration: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    report.wall_clock = time.perf_counter() - start

    try:
        write_report(report, cfg)
    except OSError as e:
        logger.error(str(e))
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    failed = [check.name for check in report.checks if check.kind == "assert" and not check.passed]
    if failed:
        logger.info(f"{args.command} finished with {len(failed)} failed check(s): {', '.join(failed)}")
        return EXIT_CHECK_FAILED
    logger.info(f"{args.command} finished: all {len(report.checks)} check(s) passed in {report.wall_clock:.1f}s")
    return EXIT_OK


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
