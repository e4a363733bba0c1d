"""
CSV and JSON input/output
"""

import csv
import io
import logging
import math
from pathlib import Path
from typing import List, Sequence, TextIO

import numpy as np

from mvproj.errors import MalformedInput, NonFiniteValue
from mvproj.models.center import CenterSpec, IndepCenter
from mvproj.models.dataset import LabeledDataset, PairedDataset
from mvproj.models.report import PowerTable, TestReport

logger = logging.getLogger(__name__)


def _read_rows(path: Path | str) -> tuple[List[str], List[List[str]]]:
    try:
        with open(path, newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))
    except OSError as e:
        raise MalformedInput(f"{path}: cannot be read ({e.strerror})") from e
    except (UnicodeDecodeError, csv.Error) as e:
        raise MalformedInput(f"{path}: not a UTF-8 CSV file ({e})") from e
    rows = [row for row in rows if row]
    if not rows:
        raise MalformedInput(f"{path}: missing header row")
    header = [name.strip() for name in rows[0]]
    body = rows[1:]
    for number, row in enumerate(body, start=1):
        if len(row) != len(header):
            raise MalformedInput(
                f"{path}: data row {number} has {len(row)} fields, header has {len(header)}")
    if not body:
        raise MalformedInput(f"{path}: no data rows")
    return header, body


def _column_index(header: List[str], names: Sequence[str], path: Path | str) -> List[int]:
    index = []
    for name in names:
        if name not in header:
            raise MalformedInput(f"{path}: column '{name}' not in header {header}")
        index.append(header.index(name))
    return index


def _parse_block(body: List[List[str]], header: List[str],
                 columns: List[int]) -> np.ndarray:
    block = np.empty((len(body), len(columns)), dtype=np.float64)
    for row, values in enumerate(body):
        for j, col in enumerate(columns):
            text = values[col].strip()
            try:
                value = float(text)
            except ValueError as e:
                raise MalformedInput(
                    f"row {row}, column '{header[col]}': '{text}' is not a number") from e
            if not math.isfinite(value):
                raise NonFiniteValue(
                    f"row {row}, column '{header[col]}': non-finite value '{text}'")
            block[row, j] = value
    return block


def read_labeled_csv(path: Path | str, label_col: str,
                     y_cols: Sequence[str] | None = None) -> LabeledDataset:
    """
    Reads K-sample data from a CSV file with a header row.

    Args:
        path (Path | str): CSV file.
        label_col (str): Name of the group column.
        y_cols (Sequence[str] | None): Observation columns; every other column
            when omitted.

    Returns:
        LabeledDataset: Validated dataset.

    Raises:
        MalformedInput: Missing columns, ragged rows or unparsable numbers.
        NonFiniteValue: A NaN or infinite entry.
    """
    header, body = _read_rows(path)
    (label_index,) = _column_index(header, [label_col], path)
    if y_cols:
        columns = _column_index(header, y_cols, path)
    else:
        columns = [i for i in range(len(header)) if i != label_index]
    if not columns:
        raise MalformedInput(f"{path}: no observation columns besides '{label_col}'")
    y = _parse_block(body, header, columns)
    labels = [row[label_index].strip() for row in body]
    logger.debug("read %d rows x %d columns from %s", y.shape[0], y.shape[1], path)
    return LabeledDataset.build(y, labels)


def read_paired_csv(path: Path | str, x_cols: Sequence[str],
                    y_cols: Sequence[str]) -> PairedDataset:
    """
    Reads independence data from a CSV file with a header row.

    Raises:
        MalformedInput: Missing columns, ragged rows or unparsable numbers.
        NonFiniteValue: A NaN or infinite entry.
    """
    if not x_cols or not y_cols:
        raise MalformedInput("both x and y columns must be named")
    header, body = _read_rows(path)
    x = _parse_block(body, header, _column_index(header, x_cols, path))
    y = _parse_block(body, header, _column_index(header, y_cols, path))
    return PairedDataset.build(x, y)


def write_labeled_csv(data: LabeledDataset, path: Path | str,
                      label_col: str = "group") -> None:
    """Writes K-sample data; floats use repr so a re-read is bit-identical."""
    names = [f"y{j + 1}" for j in range(data.q)]
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow([label_col] + names)
        for code, row in zip(data.labels, data.y):
            writer.writerow([data.label_names[code - 1]] + [repr(float(v)) for v in row])


def write_paired_csv(data: PairedDataset, path: Path | str) -> None:
    """Writes independence data as columns x1..xp, y1..yq."""
    names = [f"x{j + 1}" for j in range(data.p)] + [f"y{j + 1}" for j in range(data.q)]
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(names)
        for xr, yr in zip(data.x, data.y):
            writer.writerow([repr(float(v)) for v in np.concatenate([xr, yr])])


def center_label(spec: CenterSpec) -> str:
    """Compact text form of a center: coordinates joined by ',' with '|' between blocks."""
    origin = spec.origin
    if origin.kind == "sample-point":
        return f"sample-point:{origin.index}"
    center = spec.center
    if isinstance(center, IndepCenter):
        return ",".join(map(repr, center.z_x)) + "|" + ",".join(map(repr, center.z_y))
    return ",".join(map(repr, center.z))


def report_to_json(report: TestReport) -> str:
    """The report as indented JSON with a fixed key order."""
    return report.model_dump_json(indent=2) + "\n"


def report_to_csv(report: TestReport) -> str:
    """One row per center plus a final `pooled` summary row."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["row", "center", "statistic", "p_value", "B", "seed", "method", "runtime_ms"])
    method = f"{report.method.problem}/{report.method.center_strategy}/" \
             f"{report.method.univariate}/{report.method.pooling}/{report.method.calibration}"
    for i, entry in enumerate(report.per_center):
        writer.writerow([i, center_label(entry.center), repr(entry.statistic),
                         repr(entry.p_value), "", "", "", ""])
    writer.writerow(["pooled", "", repr(report.statistic), repr(report.p_value),
                     report.B, report.seed, method,
                     "" if report.runtime_ms is None else report.runtime_ms])
    return out.getvalue()


def power_to_json(table: PowerTable) -> str:
    """Power table as indented JSON."""
    return table.model_dump_json(indent=2) + "\n"


def power_to_csv(table: PowerTable) -> str:
    """Power table with one row per sample size."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "replications", "rejections", "rate", "se"])
    for row in table.rows:
        writer.writerow([row.n, row.replications, row.rejections, repr(row.rate),
                         "" if row.se is None else repr(row.se)])
    return out.getvalue()


def write_text(text: str, path: Path | str | None, stream: TextIO) -> None:
    """Writes `text` to `path`, or to `stream` when no path is given."""
    if path is None:
        stream.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")


def write_null(null: np.ndarray, path: Path | str) -> None:
    """Writes the pooled null sample as a one-column CSV."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["null"])
        for value in np.asarray(null, dtype=np.float64):
            writer.writerow([repr(float(value))])
