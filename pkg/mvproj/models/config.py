"""
Models for pipeline and simulation configuration
"""

from __future__ import annotations

from mvproj.utils.compat import StrEnum
from typing import List, Optional

from pydantic import (
    BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, model_validator
)

from mvproj.errors import InvalidConfig, InvalidScenario
from mvproj.models.center import (
    CenterStrategy, FixedList, IndepCenter, TwoSampleCenter, UniformBoundingBox
)
from mvproj.models.permutation import Workers
from mvproj.models.statistic import INDEPENDENCE_TESTS, TWO_SAMPLE_TESTS, TestId
from mvproj.utils.config import settings


class Problem(StrEnum):
    """Which null hypothesis is tested."""
    TWO_SAMPLE = "two-sample"
    K_SAMPLE = "k-sample"
    INDEPENDENCE = "independence"


class PoolingRule(StrEnum):
    """How per-center results become one decision; the value is the CLI name."""
    MAX_STAT = "maxstat"
    MIN_P = "minp"
    SUM_STAT = "sumstat"
    FISHER_LOG_P = "fisher"
    MAX_P = "maxp"
    BONFERRONI_GLOBAL = "bonferroni"
    HOMMEL_GLOBAL = "hommel"
    MEAN_STAT = "meanstat"

    @property
    def is_global(self) -> bool:
        """Global-null rules yield a final p-value without permuting the pooled statistic."""
        return self in (PoolingRule.BONFERRONI_GLOBAL, PoolingRule.HOMMEL_GLOBAL)


class PipelineConfig(BaseModel):
    """
    The two-step procedure made concrete.

    Attributes:
        problem (Problem): Two-sample, K-sample or independence.
        center_strategy (CenterStrategy): Where distances are measured from.
        univariate (TestId): Univariate test applied to each projection.
        pooling (PoolingRule): How per-center results are combined.
        b (int): Permutations.
        seed (int): Master seed.
        alpha (float): Level used for decisions and power studies.
        exact (bool): Exact enumeration instead of Monte Carlo permutations.
        jitter (bool): Deterministic tie-breaking perturbation of distances.
        n_jobs (int): Parallel workers.
    """
    model_config = ConfigDict(frozen=True)

    problem: Problem
    center_strategy: CenterStrategy = UniformBoundingBox(
        m=settings.CENTERS, expansion=settings.BBOX_EXPANSION)
    univariate: TestId
    pooling: PoolingRule = PoolingRule.MIN_P
    b: PositiveInt = settings.PERMUTATIONS
    seed: int = Field(default=0, ge=-(2 ** 63), lt=2 ** 64)
    alpha: float = Field(default=settings.ALPHA, gt=0.0, lt=1.0)
    exact: bool = False
    jitter: bool = False
    n_jobs: Workers = settings.N_JOBS

    @model_validator(mode="after")
    def check_compatible(self) -> PipelineConfig:
        """Checks that the univariate test and centers fit the problem."""
        if self.problem is Problem.INDEPENDENCE:
            allowed = INDEPENDENCE_TESTS
        elif self.problem is Problem.K_SAMPLE:
            allowed = frozenset({TestId.KRUSKAL_WALLIS})
        else:
            allowed = TWO_SAMPLE_TESTS
        if self.univariate not in allowed:
            raise InvalidConfig(
                f"test '{self.univariate}' cannot be used for the {self.problem} problem; "
                f"choose one of {sorted(str(t) for t in allowed)}")
        if isinstance(self.center_strategy, FixedList):
            wanted = IndepCenter if self.problem is Problem.INDEPENDENCE else TwoSampleCenter
            for spec in self.center_strategy.centers:
                if not isinstance(spec.center, wanted):
                    raise InvalidConfig(
                        f"a {spec.center.kind} center cannot be used for the {self.problem} problem")
        return self


class Generator(StrEnum):
    """Shipped synthetic data generators."""
    NULL_GAUSSIAN = "null-gaussian"
    NULL_LOGNORMAL = "null-lognormal"
    LOCATION_SHIFT = "location-shift"
    SCALE_SHIFT = "scale-shift"
    NULL_INDEP = "null-indep"
    LINEAR_DEP = "linear-dep"
    QUADRATIC_DEP = "quadratic-dep"
    CIRCLE_DEP = "circle-dep"

    @property
    def problem(self) -> Problem:
        """Whether the generator yields labeled or paired data."""
        if self in (Generator.NULL_INDEP, Generator.LINEAR_DEP,
                    Generator.QUADRATIC_DEP, Generator.CIRCLE_DEP):
            return Problem.INDEPENDENCE
        return Problem.TWO_SAMPLE


# smallest projected sample each univariate test accepts
MIN_POINTS = {
    TestId.KS: 2,
    TestId.CVM: 2,
    TestId.KRUSKAL_WALLIS: 2,
    TestId.HOEFFDING_D: 5,
    TestId.THAS_SUM: 3,
}


class ScenarioSpec(BaseModel):
    """
    Synthetic data scenario.

    For labeled generators `n` is the size of every group; for paired
    generators it is the number of pairs.

    Attributes:
        generator (Generator): Which generator.
        n (int): Sample size (see above).
        q (int): Dimension of y (or of each group's observations).
        p (int): Dimension of x for paired generators.
        groups (int): Number of groups for labeled generators.
        shift (float): Location shift per coordinate between consecutive groups.
        scale (float): Standard-deviation ratio of group 2 to group 1.
        rho (float): Linear dependence strength in [-1, 1].
        noise (float): Additive noise level for nonlinear dependence.
        replications (int): R, replications per grid point in power studies.
        n_grid (List[int]): Sample sizes swept by power studies.
    """
    model_config = ConfigDict(frozen=True)

    generator: Generator
    n: PositiveInt = 50
    q: PositiveInt = 1
    p: PositiveInt = 1
    groups: int = Field(default=2, ge=2)
    shift: float = 0.0
    scale: PositiveFloat = 1.0
    rho: float = Field(default=0.0, ge=-1.0, le=1.0)
    noise: float = Field(default=0.0, ge=0.0)
    replications: PositiveInt = 100
    n_grid: List[PositiveInt] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_generator(self) -> ScenarioSpec:
        """Rejects parameter combinations the generator cannot honour."""
        if self.generator in (Generator.QUADRATIC_DEP, Generator.CIRCLE_DEP) and (
                self.p != 1 or self.q != 1):
            raise InvalidScenario(f"{self.generator} generates p = q = 1 data only")
        if self.generator is Generator.SCALE_SHIFT and self.groups != 2:
            raise InvalidScenario("scale-shift generates exactly two groups")
        return self

    def sizes(self) -> List[int]:
        """Grid of sample sizes, or the single `n` when no grid is given."""
        return list(self.n_grid) if self.n_grid else [self.n]

    def check_grid(self, test: TestId) -> None:
        """
        Raises InvalidScenario when a grid size is too small for `test`.

        Args:
            test (TestId): Univariate test that will run on the projections.
        """
        minimum = MIN_POINTS[test]
        # sample-point centers drop one row, so keep one spare
        for size in self.sizes():
            total = size * self.groups if self.generator.problem is not Problem.INDEPENDENCE else size
            if total - 1 < minimum:
                raise InvalidScenario(
                    f"n = {size} is too small for the '{test}' test (needs {minimum + 1} rows)")

    def at(self, size: int) -> ScenarioSpec:
        """Copy of the scenario with `n` set to one grid size."""
        return self.model_copy(update={"n": size})


def default_strategy(m: Optional[int] = None) -> UniformBoundingBox:
    """Default center distribution: uniform on the widened bounding box."""
    return UniformBoundingBox(m=m or settings.CENTERS, expansion=settings.BBOX_EXPANSION)
