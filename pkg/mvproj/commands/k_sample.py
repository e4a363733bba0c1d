"""
k-sample command
"""

import argparse
from typing import Any, Dict

from mvproj.commands.emit import emit_report
from mvproj.commands.options import (
    add_input_options, add_output_options, add_pipeline_options, pipeline_config
)
from mvproj.errors import InvalidConfig
from mvproj.harness.io import read_labeled_csv
from mvproj.models.config import Problem
from mvproj.models.statistic import TestId
from mvproj.pipeline import Pipeline

NAME = "k-sample"


def register(subparsers: argparse._SubParsersAction) -> None:
    """Adds the command to the CLI."""
    parser = subparsers.add_parser(NAME, help="test whether K groups share a distribution")
    add_input_options(parser, paired=False)
    add_pipeline_options(parser, tests=[str(TestId.KRUSKAL_WALLIS)])
    add_output_options(parser)


def handle(options: Dict[str, Any]) -> int:
    """Command handler"""
    if not options.get("input") or not options.get("label_col"):
        raise InvalidConfig("k-sample needs --input and --label-col")
    config = pipeline_config(options, Problem.K_SAMPLE, TestId.KRUSKAL_WALLIS)
    data = read_labeled_csv(options["input"], options["label_col"], options.get("y_cols"))
    report, null = Pipeline.calibrate(config, data, timing=not options.get("no_timing"))
    emit_report(report, null, options)
    return 0
