"""
Permutation calibration.

Permutation `b` (b = 1..B) draws its rearrangement from a generator seeded
with `derive_seed(master_seed, STREAM_PERMUTATION, b)`, so results do not
depend on how the B draws are split between workers. Monte Carlo p-values
use the add-one convention (1 + #{T_b >= T_obs}) / (B + 1); exact mode
enumerates every distinct rearrangement (identity included) and reports
#{T >= T_obs} / total.
"""

import itertools
import logging
import math
from typing import Callable, Iterator, List, Tuple

import numpy as np
from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict

from mvproj.errors import InvalidPlan, NotTwoGroups, TooManyAssignments
from mvproj.models.dataset import LabeledDataset, PairedDataset
from mvproj.models.permutation import PermutationMode, PermutationPlan
from mvproj.utils.config import settings
from mvproj.utils.seeding import STREAM_PERMUTATION, rng_for

logger = logging.getLogger(__name__)

Dataset = LabeledDataset | PairedDataset
Statistic = Callable[[Dataset], float | np.ndarray]

# relative slack under which two statistic values count as tied
TIE_TOLERANCE = 1e-12

# permutations handed to a worker at once
CHUNK = 64


class NullDistribution(BaseModel):
    """
    Observed statistic vector and its permutation null.

    Attributes:
        observed (np.ndarray): Statistic on the data, shape (M,).
        null (np.ndarray): One row per rearrangement, shape (B, M).
        exact (bool): Whether `null` enumerates every rearrangement.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    observed: np.ndarray
    null: np.ndarray
    exact: bool = False

    @property
    def reference(self) -> np.ndarray:
        """Rows p-values are computed against: the null, plus the data itself in Monte Carlo mode."""
        if self.exact:
            return self.null
        return np.vstack([self.observed[None, :], self.null])

    def pvalues(self, rows: np.ndarray) -> np.ndarray:
        """
        Per-column permutation p-values of arbitrary rows against `reference`.

        Args:
            rows (np.ndarray): Shape (r, M).

        Returns:
            np.ndarray: Shape (r, M), values in (0, 1].
        """
        return column_pvalues(self.reference, np.atleast_2d(rows))


def _slack(values: np.ndarray) -> np.ndarray:
    return TIE_TOLERANCE * np.maximum(np.abs(values), 1.0)


def count_at_least(sample: np.ndarray, value: float) -> int:
    """#{s in sample : s >= value}, with ties inside the relative tolerance counted."""
    sample = np.asarray(sample, dtype=np.float64)
    return int(np.count_nonzero(sample >= value - _slack(np.asarray(value))))


def column_pvalues(reference: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """
    For every column c: #{reference[:, c] >= rows[:, c]} / len(reference).
    """
    total = reference.shape[0]
    out = np.empty(rows.shape, dtype=np.float64)
    for c in range(rows.shape[1]):
        ordered = np.sort(reference[:, c])
        below = np.searchsorted(ordered, rows[:, c] - _slack(rows[:, c]), side="left")
        out[:, c] = (total - below) / total
    return out


def rearrange(data: Dataset, mode: PermutationMode, order: np.ndarray) -> Dataset:
    """
    Applies one rearrangement: labels follow `order` for LabelPermute,
    y rows follow `order` for PairPermute (x untouched).
    """
    if mode is PermutationMode.LABEL_PERMUTE:
        return data.with_labels(data.labels[order])
    return data.with_y_order(order)


def _check_plan(data: Dataset, plan: PermutationPlan) -> None:
    if plan.mode is PermutationMode.LABEL_PERMUTE and not isinstance(data, LabeledDataset):
        raise InvalidPlan("label permutation needs a labeled dataset")
    if plan.mode is PermutationMode.PAIR_PERMUTE and not isinstance(data, PairedDataset):
        raise InvalidPlan("pair permutation needs a paired dataset")


def _as_vector(value: float | np.ndarray) -> np.ndarray:
    return np.atleast_1d(np.asarray(value, dtype=np.float64)).reshape(-1)


def _monte_carlo_chunk(statistic: Statistic, data: Dataset, mode: PermutationMode,
                       master_seed: int, first: int, last: int) -> np.ndarray:
    rows = []
    for b in range(first, last):
        order = rng_for(master_seed, STREAM_PERMUTATION, b).permutation(data.n)
        rows.append(_as_vector(statistic(rearrange(data, mode, order))))
    return np.vstack(rows)


def _exact_chunk(statistic: Statistic, data: Dataset, mode: PermutationMode,
                 orders: List[np.ndarray]) -> np.ndarray:
    return np.vstack([_as_vector(statistic(rearrange(data, mode, order))) for order in orders])


def assignment_count(data: Dataset, mode: PermutationMode) -> int:
    """Number of distinct rearrangements exact mode enumerates."""
    if mode is PermutationMode.PAIR_PERMUTE:
        return math.factorial(data.n)
    count = math.factorial(data.n)
    for size in data.group_sizes.tolist():
        count //= math.factorial(size)
    return count


def label_orders(labels: np.ndarray) -> Iterator[np.ndarray]:
    """
    Yields one index order per distinct rearrangement of a label vector.

    `labels[order]` runs through every multiset arrangement exactly once.
    """
    n = labels.shape[0]
    codes = np.unique(labels)
    sizes = [int(np.count_nonzero(labels == code)) for code in codes]
    sources = [np.flatnonzero(labels == code) for code in codes]

    def assign(free: Tuple[int, ...], group: int) -> Iterator[List[Tuple[int, int]]]:
        if group == len(codes) - 1:
            yield [(slot, group) for slot in free]
            return
        for chosen in itertools.combinations(free, sizes[group]):
            taken = set(chosen)
            rest = tuple(slot for slot in free if slot not in taken)
            for tail in assign(rest, group + 1):
                yield [(slot, group) for slot in chosen] + tail

    for placement in assign(tuple(range(n)), 0):
        order = np.empty(n, dtype=np.int64)
        used = [0] * len(codes)
        for slot, group in sorted(placement):
            order[slot] = sources[group][used[group]]
            used[group] += 1
        yield order


def _orders(data: Dataset, mode: PermutationMode) -> Iterator[np.ndarray]:
    if mode is PermutationMode.PAIR_PERMUTE:
        return (np.array(p, dtype=np.int64) for p in itertools.permutations(range(data.n)))
    return label_orders(data.labels)


def _chunks(iterable: Iterator[np.ndarray], size: int) -> Iterator[List[np.ndarray]]:
    while True:
        block = list(itertools.islice(iterable, size))
        if not block:
            return
        yield block


def permutation_null(statistic: Statistic, data: Dataset, plan: PermutationPlan) -> NullDistribution:
    """
    Observed statistic and its permutation (or exact) null distribution.

    The statistic may return a scalar or a length-M vector. It must be a
    pure function of the dataset.

    Args:
        statistic (Statistic): Pure function of a dataset.
        data (Dataset): Observed data.
        plan (PermutationPlan): Mode, B, seed, exact flag, cap, workers.

    Returns:
        NullDistribution: Observed vector and null matrix.

    Raises:
        InvalidPlan: Mode does not match the dataset type.
        TooManyAssignments: Exact mode over the cap.
    """
    _check_plan(data, plan)
    observed = _as_vector(statistic(data))
    parallel = Parallel(n_jobs=plan.n_jobs, backend=settings.BACKEND)

    if plan.exact:
        total = assignment_count(data, plan.mode)
        if total > plan.cap:
            raise TooManyAssignments(f"{total} rearrangements exceed the cap of {plan.cap}")
        logger.debug("enumerating %d rearrangements", total)
        blocks = parallel(
            delayed(_exact_chunk)(statistic, data, plan.mode, orders)
            for orders in _chunks(_orders(data, plan.mode), CHUNK * 16))
        return NullDistribution(observed=observed, null=np.vstack(blocks), exact=True)

    bounds = list(range(1, plan.b + 1, CHUNK)) + [plan.b + 1]
    logger.debug("running %d permutations in %d chunks", plan.b, len(bounds) - 1)
    blocks = parallel(
        delayed(_monte_carlo_chunk)(statistic, data, plan.mode, plan.master_seed, first, last)
        for first, last in zip(bounds[:-1], bounds[1:]))
    return NullDistribution(observed=observed, null=np.vstack(blocks), exact=False)


class PermutationResult(BaseModel):
    """
    Calibrated scalar statistic.

    Attributes:
        p_value (float): Permutation p-value.
        observed (float): Statistic on the data.
        null (np.ndarray): Statistic on every rearrangement.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    p_value: float
    observed: float
    null: np.ndarray


def permutation_pvalue(statistic: Statistic, data: Dataset, plan: PermutationPlan) -> PermutationResult:
    """
    Permutation p-value of a scalar statistic.

    Monte Carlo: (1 + #{T_b >= T_obs}) / (B + 1). Exact: #{T >= T_obs} / total.
    """
    dist = permutation_null(statistic, data, plan)
    observed = float(dist.observed[0])
    null = dist.null[:, 0]
    hits = count_at_least(null, observed)
    p_value = hits / null.size if dist.exact else (1 + hits) / (null.size + 1)
    return PermutationResult(p_value=p_value, observed=observed, null=null)


def exact_two_sample_pvalue(statistic: Statistic, data: LabeledDataset,
                            cap: int = settings.EXACT_CAP) -> float:
    """
    Exact permutation p-value over all C(N, N1) two-group assignments.

    Raises:
        NotTwoGroups: Unless K = 2.
        TooManyAssignments: If C(N, N1) exceeds `cap`.
    """
    if data.k != 2:
        raise NotTwoGroups(f"expected 2 groups, got K = {data.k}")
    total = math.comb(data.n, int(data.group_sizes[0]))
    if total > cap:
        raise TooManyAssignments(f"C({data.n}, {int(data.group_sizes[0])}) = {total} exceeds the cap of {cap}")
    observed = float(_as_vector(statistic(data))[0])
    hits = 0
    for first in itertools.combinations(range(data.n), int(data.group_sizes[0])):
        labels = np.full(data.n, 2, dtype=np.int64)
        labels[list(first)] = 1
        value = float(_as_vector(statistic(data.with_labels(labels)))[0])
        hits += int(value >= observed - TIE_TOLERANCE * max(abs(observed), 1.0))
    return hits / total
