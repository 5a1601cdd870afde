#!/usr/bin/env python3
"""Main CLI entry point for biblioscope."""

import argparse
import logging
import os
import sys
import time
from collections.abc import Callable

from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

from biblioscope.cli.coword.coword_command import coword_command
from biblioscope.cli.parse.parse_command import parse_command
from biblioscope.cli.pipeline import ui
from biblioscope.cli.pipeline.context import RunContext
from biblioscope.cli.pipeline.logging_manager import StructuredLogger
from biblioscope.cli.pri.pri_command import pri_command
from biblioscope.cli.report.report_command import report_command
from biblioscope.cli.stats.stats_command import stats_command
from biblioscope.core.load.countries import CountryTableError
from biblioscope.core.load.load import ConfigError, load_study_config
from biblioscope.core.load.parse import ParseError
from biblioscope.core.pri.rank import PriError
from biblioscope.core.report.figures import ReportError
from biblioscope.core.stats import EmptyCorpus


def all_command(ctx: RunContext) -> None:
    for command in (parse_command, stats_command, pri_command, coword_command, report_command):
        command(ctx)


COMMANDS: dict[str, Callable[[RunContext], None]] = {
    "parse": parse_command,
    "stats": stats_command,
    "pri": pri_command,
    "coword": coword_command,
    "report": report_command,
    "all": all_command,
}

NEEDS_PEERS = {"pri", "report", "all"}

# ValueError covers pydantic's ValidationError
DATA_ERRORS = (
    ParseError,
    PriError,
    ReportError,
    EmptyCorpus,
    ConfigError,
    CountryTableError,
    OSError,
    ValueError,
)


class UsageError(Exception):
    """Required input missing after merging config file and flags."""


def _study_options() -> argparse.ArgumentParser:
    """Flags shared by every subcommand. All default to None so the config file can fill them."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("inputs", nargs="*", help="Export files or directories (same as --corpus)")
    parent.add_argument("--config", help="Study config file (YAML); default: $BIBLIOSCOPE_CONFIG")
    parent.add_argument("--corpus", nargs="+", action="extend", help="Export files or directories")
    parent.add_argument("--peers", nargs="+", action="extend", help="Peer-set files or directories (tagged or CSV)")
    parent.add_argument("--out", help="Output directory (default: ./output)")
    parent.add_argument("--home-country", help="Home country for cooperation statistics (default: NORWAY)")
    parent.add_argument("--year-min", type=int, help="First publication year (default: 1994)")
    parent.add_argument("--year-max", type=int, help="Last publication year (default: 2014)")
    parent.add_argument("--pri-year-max", type=int, help="Last publication year scored for PRI (default: 2012)")
    parent.add_argument("--min-freq", type=int, help="Minimal keyword frequency (default: 4)")
    parent.add_argument("--min-cos", type=float, help="Minimal cosine for cluster links (default: 0.2)")
    parent.add_argument("--min-size", type=int, help="Minimal cluster size (default: 3)")
    parent.add_argument("--max-size", type=int, help="Maximal cluster size (default: 10)")
    parent.add_argument("--stoplist", help="File of keywords left out of category tables")
    parent.add_argument("--countries", help="Country table merged over the packaged one")
    parent.add_argument(
        "--strict",
        action="store_const",
        const=True,
        help="Abort on the first malformed record instead of skipping it",
    )
    parent.add_argument(
        "--density-mode",
        choices=["mean", "sum"],
        help="Aggregate link cosines by mean (default) or sum",
    )
    parent.add_argument("--top-categories", type=int, help="Categories in the category keyword table (default: 10)")
    parent.add_argument("--top-terms", type=int, help="Keywords listed per category (default: 12)")
    parent.add_argument("--max-concurrent", type=int, help="Parallel workers for parsing and counting (default: 4)")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biblioscope",
        description="Bibliometric analysis of field-tagged bibliographic exports",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    parent = _study_options()

    subparsers.add_parser("parse", parents=[parent], help="Parse export files into JSON lines")
    subparsers.add_parser("stats", parents=[parent], help="Document types, output, authorship, cooperation, journals, categories")
    subparsers.add_parser("pri", parents=[parent], help="Percentile Rank Index against journal-year peer sets")
    subparsers.add_parser("coword", parents=[parent], help="Keyword co-occurrence graph and clusters")
    subparsers.add_parser("report", parents=[parent], help="All tables and SVG figures")
    subparsers.add_parser("all", parents=[parent], help="Run every stage in order")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    overrides = {
        key: value
        for key, value in vars(args).items()
        if key not in {"command", "config", "inputs", "corpus"}
    }
    corpus = [*(args.corpus or []), *args.inputs]
    overrides["corpus"] = corpus or None
    return overrides


def _configure_logging() -> None:
    logging.basicConfig(
        level=logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False, show_time=False)],
        force=True,
    )


def run(argv: list[str] | None = None) -> int:
    """Run one subcommand; returns the process exit code."""
    load_dotenv(dotenv_path=os.path.join(os.getcwd(), ".env"))

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.command is None:
        parser.print_help()
        return 2

    _configure_logging()
    start_time = time.time()

    try:
        config = load_study_config(args.config or os.environ.get("BIBLIOSCOPE_CONFIG"), _overrides(args))
        if not config.corpus:
            raise UsageError("no corpus given (pass export files, --corpus, or set corpus in the config)")
        if args.command in NEEDS_PEERS and not config.peers:
            raise UsageError(f"'{args.command}' needs peer sets (--peers or peers in the config)")
    except UsageError as e:
        ui.print_error(f"usage: {e}")
        return 2
    except ConfigError as e:
        ui.print_error(str(e))
        return 1

    logger = StructuredLogger(os.environ.get("BIBLIOSCOPE_LOG_DIR", ".biblioscope/logs"))
    ctx = RunContext(config=config, logger=logger)

    exit_code = 0
    try:
        COMMANDS[args.command](ctx)
    except KeyboardInterrupt:
        print("\n\nInterrupted by user", file=sys.stderr)
        exit_code = 130
    except DATA_ERRORS as e:
        ui.print_error(str(e))
        exit_code = 1

    duration_s = time.time() - start_time
    logger.log_run_complete(args.command, len(ctx.files_written), duration_s, exit_code)
    if exit_code == 0:
        ui.print_run_summary(ctx.files_written, logger.log_file, duration_s)
    return exit_code


def main():
    """Main CLI dispatcher."""
    try:
        return run()
    except KeyboardInterrupt:
        print("\n\nInterrupted by user", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main() or 0)
