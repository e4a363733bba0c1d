"""
Models for projected (univariate) samples
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict


class ProjectedSample(BaseModel):
    """
    Distances of the observations from one center.

    Attributes:
        excluded_index (Optional[int]): Row left out when the center is a sample point.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    excluded_index: Optional[int] = None


class TwoSampleProjection(ProjectedSample):
    """
    Distances paired with group codes.

    Attributes:
        d (np.ndarray): Non-negative distances, length N'.
        labels (np.ndarray): Group codes in 1..K, length N'.
        k (int): Number of groups.
    """
    d: np.ndarray
    labels: np.ndarray
    k: int = 2

    @property
    def n(self) -> int:
        """Effective sample size N'."""
        return int(self.d.shape[0])


class PairedProjection(ProjectedSample):
    """
    Paired distances for the independence problem.

    Attributes:
        d_x (np.ndarray): Distances of the x rows from z_x, length N'.
        d_y (np.ndarray): Distances of the y rows from z_y, length N'.
    """
    d_x: np.ndarray
    d_y: np.ndarray

    @property
    def n(self) -> int:
        """Effective sample size N'."""
        return int(self.d_x.shape[0])
