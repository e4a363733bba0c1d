"""
Model for permutation calibration plans
"""

from mvproj.utils.compat import StrEnum
from typing import Annotated

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, PositiveInt

from mvproj.utils.config import settings


def _workers(value: int) -> int:
    if value == 0:
        raise ValueError("n_jobs must be a positive worker count or negative (-1 uses every core), not 0")
    return value


# joblib worker count: 0 is the only value it rejects
Workers = Annotated[int, AfterValidator(_workers)]


class PermutationMode(StrEnum):
    """What is rearranged under the null."""
    LABEL_PERMUTE = "label"
    PAIR_PERMUTE = "pair"


class PermutationPlan(BaseModel):
    """
    Permutation calibration plan.

    Attributes:
        mode (PermutationMode): Group labels (K-sample) or y-row order (independence).
        b (int): Number of Monte Carlo permutations.
        master_seed (int): Seed every permutation stream is derived from.
        exact (bool): Enumerate all distinct rearrangements instead of sampling.
        cap (int): Maximum number of rearrangements exact mode may enumerate.
        n_jobs (int): Parallel workers; the result does not depend on it.
    """
    model_config = ConfigDict(frozen=True)

    mode: PermutationMode
    b: PositiveInt = settings.PERMUTATIONS
    master_seed: int = Field(default=0, ge=-(2 ** 63), lt=2 ** 64)
    exact: bool = False
    cap: PositiveInt = settings.EXACT_CAP
    n_jobs: Workers = settings.N_JOBS
