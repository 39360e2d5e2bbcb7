"""Command line entry point ``maxsobolev``.

Subcommands
-----------
``run <config>``
    Run the scenario of a JSON configuration and write its reports.
``catalog [--json]``
    List the catalog of test functions and weights.
``bench <config>``
    Run a ``bench`` configuration timing the maximal operator paths.

The exit status is 0 if every check passed, 1 if a check failed (the reports are
still written) and 2 for an invalid configuration.
"""
from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path

import maxsobolev.cli.scenarios  # noqa: F401  (registers the scenarios)
from maxsobolev.cli.config import load_config
from maxsobolev.cli.output import write_outcome
from maxsobolev.core.exceptions import BudgetError, ConfigError
from maxsobolev.grid.catalog import list_entries

__all__ = ["list_catalog", "main", "run_config"]

_logger = logging.getLogger(__name__)

EXIT_PASSED, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2
_KINDS = (("function", "Test functions"), ("weight", "Weights"))


def list_catalog(as_json: bool = False) -> str:
    """Listing of the catalog entries sorted by id, as text or JSON."""
    if as_json:
        return json.dumps([entry.to_dict() for entry in list_entries()], indent=2,
                          sort_keys=True, ensure_ascii=False)
    lines = []
    for kind, title in _KINDS:
        lines.append(f"{title}:")
        lines.extend(f"  {entry.describe()}" for entry in list_entries(kind))
    return "\n".join(lines)


def run_config(path: Path, output_dir: Path, bench: bool = False) -> int:
    """Run the scenario of a configuration file and return the exit status."""
    try:
        config = load_config(path)
        scenario_cls = config.scenario
        if bench != (scenario_cls.name == "bench"):
            raise ConfigError(
                "scenario", "the bench command runs bench configurations only"
                if bench else "bench configurations are run with the bench command")
        scenario = config.create(output_dir)
        _logger.info("Running scenario %r from %s.", scenario_cls.name, path)
        outcome = scenario.run()
    except (ConfigError, BudgetError) as e:
        _logger.error("Invalid configuration %s: %s", path, e)  # noqa: TRY400
        return EXIT_CONFIG
    except (ValueError, ArithmeticError) as e:
        _logger.error("Scenario from %s cannot be evaluated: %s", path, e)  # noqa: TRY400
        return EXIT_CONFIG
    write_outcome(outcome, output_dir, scenario_cls.name)
    if not outcome.passed:
        failed = [check[0] for check in outcome.checks if not check[1]]
        _logger.warning("Scenario %r failed: %s.", scenario_cls.name,
                        ", ".join(failed) or "see report")
        return EXIT_FAILED
    return EXIT_PASSED


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxsobolev",
        description="Numerical checks of maximal-function characterizations of "
                    "Sobolev and grand Sobolev spaces.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="Log INFO messages, or DEBUG messages with -vv")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("run", "Run a scenario configuration"),
                            ("bench", "Time the maximal operator paths")):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("config", type=Path, help="JSON configuration file")
        cmd.add_argument("-o", "--output", type=Path, default=Path(),
                         help="Directory of the report files")
    catalog = sub.add_parser("catalog", help="List the catalog entries")
    catalog.add_argument("--json", action="store_true",
                         help="Print the catalog as a JSON array")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Run the command line interface and return the exit status."""
    args = _parser().parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if args.command == "catalog":
        print(list_catalog(args.json))  # noqa: T201
        return EXIT_PASSED
    return run_config(args.config, args.output, bench=args.command == "bench")
