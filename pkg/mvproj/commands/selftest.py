"""
selftest command
"""

import argparse
import sys
from typing import Any, Dict

from mvproj.harness.io import write_text
from mvproj.harness.selftest import run_selftest

NAME = "selftest"


def register(subparsers: argparse._SubParsersAction) -> None:
    """Adds the command to the CLI."""
    parser = subparsers.add_parser(NAME, help="check the statistics against their oracles")
    parser.add_argument("--instances", type=int, help="random instances per check (default 20)")
    parser.add_argument("--output", help="write the summary here instead of stdout")
    parser.add_argument("--seed", type=int, help="master seed (fallback: MVPROJ_SEED, then 0)")
    parser.add_argument("--config", help="key=value manifest; flags override it")


def handle(options: Dict[str, Any]) -> int:
    """Command handler; exit code 1 when a check fails."""
    report = run_selftest(options["seed"], options.get("instances") or 20)
    write_text(report.model_dump_json(indent=2) + "\n", options.get("output"), sys.stdout)
    return 0 if report.passed else 1
