"""
Model for univariate statistic values
"""

from mvproj.utils.compat import StrEnum
from typing import Dict, Tuple

from pydantic import BaseModel, ConfigDict, NonNegativeInt


class TestId(StrEnum):
    """Univariate tests; the value is the CLI name."""
    __test__ = False

    KS = "ks"
    CVM = "cvm"
    HOEFFDING_D = "hoeffding"
    THAS_SUM = "thas"
    KRUSKAL_WALLIS = "kw"


# analytic range of each statistic; Hoeffding's D uses the classical
# 30-scaled normalization, equal to 1 for a perfectly monotone sample
BOUNDS: Dict[TestId, Tuple[float, float]] = {
    TestId.KS: (0.0, 1.0),
    TestId.CVM: (0.0, float("inf")),
    TestId.HOEFFDING_D: (-0.5, 1.0),
    TestId.THAS_SUM: (0.0, float("inf")),
    TestId.KRUSKAL_WALLIS: (0.0, float("inf")),
}

TWO_SAMPLE_TESTS = frozenset({TestId.KS, TestId.CVM, TestId.KRUSKAL_WALLIS})
INDEPENDENCE_TESTS = frozenset({TestId.HOEFFDING_D, TestId.THAS_SUM})


class UnivariateStatistic(BaseModel):
    """
    Value of a univariate test statistic.

    Attributes:
        value (float): The statistic; larger means more evidence against the null.
        test_id (TestId): Which statistic.
        n_effective (int): Number of projected points it was computed from.
    """
    model_config = ConfigDict(frozen=True)

    value: float
    test_id: TestId
    n_effective: NonNegativeInt

    @property
    def bounds(self) -> Tuple[float, float]:
        """Analytic range of this statistic."""
        return BOUNDS[self.test_id]
