"""
Pooling of per-center statistics and p-values.

Statistic reductions (max, sum, mean) and p-value combiners (min, max,
Fisher) are not p-values themselves and are calibrated by permutation.
`bonferroni_global` and `hommel_global` return valid p-values for the
global null under any dependence between centers.
"""

from typing import Callable, Dict, Sequence

import numpy as np

from mvproj.errors import EmptyInput, OutOfRangeP
from mvproj.models.config import PoolingRule


def _values(stats: Sequence[float]) -> np.ndarray:
    values = np.asarray(stats, dtype=np.float64).reshape(-1)
    if values.size == 0:
        raise EmptyInput("pooling needs at least one value")
    return values


def _pvalues(pvals: Sequence[float]) -> np.ndarray:
    values = _values(pvals)
    bad = np.flatnonzero(~((values > 0.0) & (values <= 1.0)))
    if bad.size:
        raise OutOfRangeP(f"p-value {values[bad[0]]!r} at position {int(bad[0])} is outside (0, 1]")
    return values


def max_stat(stats: Sequence[float]) -> float:
    """Largest per-center statistic."""
    return float(np.max(_values(stats)))


def sum_stat(stats: Sequence[float]) -> float:
    """Sum of the per-center statistics."""
    return float(np.sum(_values(stats)))


def mean_stat(stats: Sequence[float]) -> float:
    """Sum divided by M, whose limit is the expected statistic over the center distribution."""
    values = _values(stats)
    return float(np.sum(values)) / values.size


def min_p(pvals: Sequence[float]) -> float:
    """Smallest per-center p-value."""
    return float(np.min(_pvalues(pvals)))


def max_p(pvals: Sequence[float]) -> float:
    """The largest p-value."""
    return float(np.max(_pvalues(pvals)))


def fisher_log(pvals: Sequence[float]) -> float:
    """Fisher combination -2 * sum(log p)."""
    return float(-2.0 * np.sum(np.log(_pvalues(pvals))))


def bonferroni_global(pvals: Sequence[float]) -> float:
    """
    Bonferroni global-null p-value min(1, M * p_(1)).
    """
    values = _pvalues(pvals)
    return float(min(1.0, values.size * np.min(values)))


def hommel_global(pvals: Sequence[float]) -> float:
    """
    Hommel global-null p-value min(1, min_j M * C_M * p_(j) / j),
    C_M = sum_{l=1}^{M} 1/l. Valid under arbitrary dependence.
    """
    values = np.sort(_pvalues(pvals))
    m = values.size
    harmonic = float(np.sum(1.0 / np.arange(1, m + 1)))
    adjusted = m * harmonic * values / np.arange(1, m + 1)
    return float(min(1.0, np.min(adjusted)))


# row-wise forms used on permutation null matrices; every score is
# oriented so that larger values are more extreme
def _rowwise(stats: np.ndarray, pvals: np.ndarray, rule: PoolingRule) -> np.ndarray:
    if rule is PoolingRule.MAX_STAT:
        return stats.max(axis=1)
    if rule is PoolingRule.SUM_STAT:
        return stats.sum(axis=1)
    if rule is PoolingRule.MEAN_STAT:
        return stats.sum(axis=1) / stats.shape[1]
    if rule is PoolingRule.MIN_P:
        return -pvals.min(axis=1)
    if rule is PoolingRule.MAX_P:
        return -pvals.max(axis=1)
    if rule is PoolingRule.FISHER_LOG_P:
        return -2.0 * np.log(pvals).sum(axis=1)
    raise ValueError(f"{rule} is not calibrated by permutation")


def pooled_scores(stats: np.ndarray, pvals: np.ndarray, rule: PoolingRule) -> np.ndarray:
    """
    Pooled score of every row of a (rows x M) statistics/p-value matrix.

    Args:
        stats (np.ndarray): Per-center statistics, one row per (re)arrangement.
        pvals (np.ndarray): Matching per-center p-values.
        rule (PoolingRule): A permutation-calibrated rule.

    Returns:
        np.ndarray: One score per row; larger is more extreme.
    """
    return _rowwise(np.atleast_2d(stats), np.atleast_2d(pvals), rule)


def pooled_value(stats: Sequence[float], pvals: Sequence[float], rule: PoolingRule) -> float:
    """
    The pooled statistic as reported (min/max p are reported as p-values,
    not negated).
    """
    reducers: Dict[PoolingRule, Callable[[], float]] = {
        PoolingRule.MAX_STAT: lambda: max_stat(stats),
        PoolingRule.SUM_STAT: lambda: sum_stat(stats),
        PoolingRule.MEAN_STAT: lambda: mean_stat(stats),
        PoolingRule.MIN_P: lambda: min_p(pvals),
        PoolingRule.MAX_P: lambda: max_p(pvals),
        PoolingRule.FISHER_LOG_P: lambda: fisher_log(pvals),
        PoolingRule.BONFERRONI_GLOBAL: lambda: bonferroni_global(pvals),
        PoolingRule.HOMMEL_GLOBAL: lambda: hommel_global(pvals),
    }
    return reducers[rule]()
