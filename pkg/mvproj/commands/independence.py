"""
independence command
"""

import argparse
from typing import Any, Dict

from mvproj.commands.emit import emit_report
from mvproj.commands.options import (
    add_input_options, add_output_options, add_pipeline_options, pipeline_config
)
from mvproj.errors import InvalidConfig
from mvproj.harness.io import read_paired_csv
from mvproj.models.config import Problem
from mvproj.models.statistic import TestId
from mvproj.pipeline import Pipeline

NAME = "independence"


def register(subparsers: argparse._SubParsersAction) -> None:
    """Adds the command to the CLI."""
    parser = subparsers.add_parser(NAME, help="test whether x and y are independent")
    add_input_options(parser, paired=True)
    add_pipeline_options(parser, tests=[str(TestId.HOEFFDING_D), str(TestId.THAS_SUM)])
    add_output_options(parser)


def handle(options: Dict[str, Any]) -> int:
    """Command handler"""
    if not options.get("input") or not options.get("x_cols") or not options.get("y_cols"):
        raise InvalidConfig("independence needs --input, --x-cols and --y-cols")
    config = pipeline_config(options, Problem.INDEPENDENCE, TestId.HOEFFDING_D)
    data = read_paired_csv(options["input"], options["x_cols"], options["y_cols"])
    report, null = Pipeline.calibrate(config, data, timing=not options.get("no_timing"))
    emit_report(report, null, options)
    return 0
