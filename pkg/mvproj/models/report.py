"""
Models for test and power-study reports
"""

from __future__ import annotations

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt

from mvproj.models.center import CenterSpec


class MethodDescriptor(BaseModel):
    """
    What was computed.

    Attributes:
        problem (str): Two-sample, K-sample or independence.
        center_strategy (str): Projection strategy identifier.
        m (int): Number of centers.
        univariate (str): Univariate test identifier.
        pooling (str): Pooling rule identifier.
        calibration (Literal["permutation", "exact", "global-null"]):
            How the final p-value was obtained.
        pooling_permutations (int): Permutations used for the pooled statistic,
            0 for global-null rules.
    """
    problem: str
    center_strategy: str
    m: NonNegativeInt
    univariate: str
    pooling: str
    calibration: Literal["permutation", "exact", "global-null"]
    pooling_permutations: NonNegativeInt


class CenterResult(BaseModel):
    """
    Per-center breakdown entry.

    Attributes:
        center (CenterSpec): The center.
        statistic (float): Univariate statistic on its projection.
        p_value (float): Permutation p-value of that statistic.
    """
    center: CenterSpec
    statistic: float
    p_value: float


class TestReport(BaseModel):
    """
    Result of one pipeline run.

    Attributes:
        method (MethodDescriptor): Projection, univariate test and pooling rule.
        statistic (float): Pooled statistic.
        p_value (float): Final p-value in (0, 1].
        per_center (List[CenterResult]): One entry per center (length M).
        B (int): Permutations (or enumerated assignments in exact mode).
        seed (int): Master seed.
        runtime_ms (Optional[int]): Wall time, or None when timing is disabled.
    """
    __test__ = False
    model_config = ConfigDict(populate_by_name=True)

    method: MethodDescriptor
    statistic: float
    p_value: float = Field(gt=0.0, le=1.0)
    per_center: List[CenterResult]
    B: NonNegativeInt  # pylint: disable=invalid-name
    seed: int
    runtime_ms: Optional[int] = None


class PowerRow(BaseModel):
    """
    Rejection rate at one sample size.

    Attributes:
        n (int): Sample size.
        replications (int): R.
        rejections (int): Replications with p <= alpha.
        rate (float): rejections / R.
        se (Optional[float]): Binomial standard error; None when R = 1.
    """
    n: int
    replications: int
    rejections: int
    rate: float
    se: Optional[float]


class PowerTable(BaseModel):
    """
    Power study result.

    Attributes:
        method (MethodDescriptor): The pipeline that was run.
        scenario (str): Generator identifier.
        alpha (float): Level.
        seed (int): Master seed.
        rows (List[PowerRow]): One row per grid size.
    """
    method: MethodDescriptor
    scenario: str
    alpha: float
    seed: int
    rows: List[PowerRow]


class SelftestCheck(BaseModel):
    """
    Outcome of one algebraic check.

    Attributes:
        name (str): Check identifier.
        instances (int): Random instances tried.
        failures (int): Instances where the identity did not hold.
        max_error (float): Largest relative discrepancy observed.
    """
    name: str
    instances: int
    failures: int
    max_error: float

    @property
    def passed(self) -> bool:
        """True when no instance failed."""
        return self.failures == 0


class SelftestReport(BaseModel):
    """
    Summary printed by the selftest command.

    Attributes:
        seed (int): Master seed of the random instances.
        passed (bool): Every check passed.
        checks (List[SelftestCheck]): One entry per check.
    """
    seed: int
    passed: bool
    checks: List[SelftestCheck]
