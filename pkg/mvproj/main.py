"""
Main module for the mvproj command-line interface.
"""

import argparse
import logging
import sys
import warnings
from typing import List, Optional

from mvproj.commands import register
from mvproj.commands.options import merge
from mvproj.errors import MvprojError
from mvproj.models.error import ErrorReport
from mvproj.utils.config import settings

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """The CLI with every subcommand registered."""
    parser = argparse.ArgumentParser(
        prog="mvproj",
        description="Multivariate K-sample and independence tests by projection "
                    "to distances from center points",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="more logging (-v info, -vv debug)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    register(subparsers)
    return parser


def configure_logging(verbose: int) -> None:
    """Root logger on stderr; -v flags override LOG_LEVEL."""
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(
        level=level, stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s", force=True)
    logging.captureWarnings(True)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Runs the CLI.

    Returns:
        int: 0 on completion, 1 when selftest fails, 2 on invalid input.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    handler = args.handler
    try:
        options = merge(args)
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return handler(options)
    except MvprojError as e:
        logger.debug("command failed", exc_info=True)
        sys.stderr.write(ErrorReport(detail=e.detail, kind=e.kind).model_dump_json() + "\n")
        return 2


def run() -> None:
    """Console entry point."""
    sys.exit(main())
