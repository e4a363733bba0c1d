"""
Writing reports to stdout or files
"""

import logging
import sys
from typing import Any, Dict, Optional

import numpy as np

from mvproj.harness.io import (
    power_to_csv, power_to_json, report_to_csv, report_to_json, write_null, write_text
)
from mvproj.models.report import PowerTable, TestReport

logger = logging.getLogger(__name__)


def emit_report(report: TestReport, null: Optional[np.ndarray], options: Dict[str, Any]) -> None:
    """Writes a test report and, when asked, the pooled null sample."""
    text = report_to_csv(report) if options["format"] == "csv" else report_to_json(report)
    write_text(text, options.get("output"), sys.stdout)
    null_out = options.get("null_out")
    if null_out:
        if null is None:
            logger.warning("%s pooling has no permutation null; %s not written",
                           report.method.pooling, null_out)
        else:
            write_null(null, null_out)


def emit_power(table: PowerTable, options: Dict[str, Any]) -> None:
    """Writes a power table."""
    text = power_to_csv(table) if options["format"] == "csv" else power_to_json(table)
    write_text(text, options.get("output"), sys.stdout)
