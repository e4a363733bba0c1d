"""
Models for input datasets
"""

from __future__ import annotations

from typing import Any, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from mvproj.errors import (
    DimensionMismatch, EmptyGroup, InvalidLabels, NonFiniteValue
)


def as_matrix(values: Any, name: str) -> np.ndarray:
    """
    Converts array-like input to a read-only 2-D float64 matrix.

    Args:
        values (Any): Matrix, or a vector interpreted as one column.
        name (str): Block name used in error messages.

    Returns:
        np.ndarray: Read-only copy of shape (N, d).

    Raises:
        DimensionMismatch: If the input has more than two dimensions or no columns.
        NonFiniteValue: If any entry is NaN or infinite.
    """
    try:
        matrix = np.array(values, dtype=np.float64, copy=True)
    except (TypeError, ValueError) as e:
        raise DimensionMismatch(f"{name}: not a numeric matrix ({e})") from e
    if matrix.ndim == 1:
        matrix = matrix.reshape(-1, 1)
    if matrix.ndim != 2 or matrix.shape[1] == 0:
        raise DimensionMismatch(f"{name}: expected an N x d matrix, got shape {matrix.shape}")
    check_finite(matrix, name)
    matrix.setflags(write=False)
    return matrix


def check_finite(matrix: np.ndarray, name: str) -> None:
    """
    Raises NonFiniteValue naming the first offending row and column.
    """
    bad = np.argwhere(~np.isfinite(matrix))
    if bad.size:
        row, col = (int(v) for v in bad[0])
        raise NonFiniteValue(
            f"{name}: non-finite value {matrix[row, col]!r} at row {row}, column {col}")


def recode_labels(labels: Sequence[Any], k: Optional[int] = None) -> Tuple[np.ndarray, Tuple[str, ...]]:
    """
    Re-codes arbitrary group labels to contiguous integers 1..K.

    Integer labels in 1..k keep their value when `k` is declared, so that an
    empty declared group can be detected. Otherwise distinct labels are
    numbered in sorted order.

    Args:
        labels (Sequence[Any]): One label per row.
        k (Optional[int]): Declared number of groups.

    Returns:
        Tuple[np.ndarray, Tuple[str, ...]]: Codes in 1..K and the original
        label of each code.
    """
    raw = list(labels)
    if k is not None:
        try:
            codes = np.array([int(v) for v in raw], dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise InvalidLabels(f"labels must be integers in 1..{k} when K is declared") from e
        outside = np.flatnonzero((codes < 1) | (codes > k))
        if outside.size:
            row = int(outside[0])
            raise InvalidLabels(f"label {codes[row]} at row {row} is outside 1..{k}")
        return codes, tuple(str(v) for v in range(1, k + 1))

    names = sorted({str(v) for v in raw}, key=_label_sort_key)
    index = {name: code for code, name in enumerate(names, start=1)}
    codes = np.array([index[str(v)] for v in raw], dtype=np.int64)
    return codes, tuple(names)


def _label_sort_key(name: str) -> Tuple[int, float, str]:
    try:
        return 0, float(name), name
    except ValueError:
        return 1, 0.0, name


class LabeledDataset(BaseModel):
    """
    K-sample data: an N x q matrix with a group label per row.

    Attributes:
        y (np.ndarray): Observations, shape (N, q), read-only.
        labels (np.ndarray): Group codes in 1..K, shape (N,).
        k (int): Number of groups, at least 2.
        label_names (Tuple[str, ...]): Original label of each code.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    y: np.ndarray
    labels: np.ndarray
    k: int
    label_names: Tuple[str, ...]

    @model_validator(mode="after")
    def check_invariants(self) -> LabeledDataset:
        """Runs the dataset invariants; raises the typed error directly."""
        validate_labeled(self)
        return self

    @classmethod
    def build(cls, y: Any, labels: Sequence[Any], k: Optional[int] = None) -> LabeledDataset:
        """
        Builds a dataset from raw values, re-coding labels to 1..K.

        Args:
            y (Any): N x q matrix (or length-N vector).
            labels (Sequence[Any]): One label per row.
            k (Optional[int]): Declared number of groups.

        Returns:
            LabeledDataset: Validated dataset.
        """
        matrix = as_matrix(y, "y")
        if len(labels) != matrix.shape[0]:
            raise DimensionMismatch(
                f"labels: length {len(labels)} does not match {matrix.shape[0]} rows of y")
        codes, names = recode_labels(labels, k)
        codes.setflags(write=False)
        return cls(y=matrix, labels=codes, k=k if k is not None else len(names), label_names=names)

    @property
    def n(self) -> int:
        """Number of rows."""
        return int(self.y.shape[0])

    @property
    def q(self) -> int:
        """Dimension of the observations."""
        return int(self.y.shape[1])

    @property
    def group_sizes(self) -> np.ndarray:
        """Row count of every group, index 0 for group 1."""
        return np.bincount(self.labels, minlength=self.k + 1)[1:]

    def with_labels(self, labels: np.ndarray) -> LabeledDataset:
        """Returns a copy with rearranged labels; used by permutation, skips validation."""
        labels = np.asarray(labels, dtype=np.int64)
        labels.setflags(write=False)
        return self.model_copy(update={"labels": labels})


class PairedDataset(BaseModel):
    """
    Independence data: aligned N x p and N x q matrices.

    Attributes:
        x (np.ndarray): First block, shape (N, p), read-only.
        y (np.ndarray): Second block, shape (N, q); row i pairs with x[i].
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    x: np.ndarray
    y: np.ndarray

    @model_validator(mode="after")
    def check_invariants(self) -> PairedDataset:
        """Runs the dataset invariants; raises the typed error directly."""
        validate_paired(self)
        return self

    @classmethod
    def build(cls, x: Any, y: Any) -> PairedDataset:
        """
        Builds a dataset from raw values.

        Args:
            x (Any): N x p matrix (or length-N vector).
            y (Any): N x q matrix (or length-N vector).

        Returns:
            PairedDataset: Validated dataset.
        """
        return cls(x=as_matrix(x, "x"), y=as_matrix(y, "y"))

    @property
    def n(self) -> int:
        """Number of paired rows."""
        return int(self.x.shape[0])

    @property
    def p(self) -> int:
        """Dimension of the x block."""
        return int(self.x.shape[1])

    @property
    def q(self) -> int:
        """Dimension of the y block."""
        return int(self.y.shape[1])

    def with_y_order(self, order: np.ndarray) -> PairedDataset:
        """Returns a copy whose y rows are reordered; the x block is untouched."""
        y = self.y[np.asarray(order)]
        y.setflags(write=False)
        return self.model_copy(update={"y": y})


def validate_labeled(data: LabeledDataset) -> None:
    """
    Checks the LabeledDataset invariants.

    Raises:
        DimensionMismatch: Matrix or label shapes disagree.
        InvalidLabels: Fewer than two groups, or codes outside 1..K.
        EmptyGroup: A group in 1..K has no rows.
        NonFiniteValue: A NaN or infinite entry.
    """
    y, labels = data.y, data.labels
    if y.ndim != 2:
        raise DimensionMismatch(f"y: expected an N x q matrix, got shape {y.shape}")
    if labels.ndim != 1 or labels.shape[0] != y.shape[0]:
        raise DimensionMismatch(
            f"labels: shape {labels.shape} does not match {y.shape[0]} rows of y")
    if data.k < 2:
        raise InvalidLabels(f"at least 2 groups are required, got K={data.k}")
    outside = np.flatnonzero((labels < 1) | (labels > data.k))
    if outside.size:
        row = int(outside[0])
        raise InvalidLabels(f"label code {labels[row]} at row {row} is outside 1..{data.k}")
    sizes = np.bincount(labels, minlength=data.k + 1)[1:]
    empty = np.flatnonzero(sizes == 0)
    if empty.size:
        raise EmptyGroup(f"group {int(empty[0]) + 1} of {data.k} has no rows")
    check_finite(y, "y")


def validate_paired(data: PairedDataset) -> None:
    """
    Checks the PairedDataset invariants.

    Raises:
        DimensionMismatch: Blocks are not matrices or have different row counts.
        NonFiniteValue: A NaN or infinite entry.
    """
    if data.x.ndim != 2 or data.y.ndim != 2:
        raise DimensionMismatch(
            f"expected N x p and N x q matrices, got shapes {data.x.shape} and {data.y.shape}")
    if data.x.shape[0] != data.y.shape[0]:
        raise DimensionMismatch(
            f"x has {data.x.shape[0]} rows but y has {data.y.shape[0]} rows")
    check_finite(data.x, "x")
    check_finite(data.y, "y")


def validate(data: LabeledDataset | PairedDataset) -> None:
    """
    Validates either kind of dataset; passes silently or raises exactly one typed error.
    """
    if isinstance(data, LabeledDataset):
        validate_labeled(data)
    else:
        validate_paired(data)
