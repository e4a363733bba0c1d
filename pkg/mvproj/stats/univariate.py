"""
Univariate statistics applied to projected samples.

All statistics grow with the evidence against the null and use the
non-strict comparison `<=` exactly as their formulas are written.
"""

import operator
from fractions import Fraction
from typing import Callable, Dict

import numpy as np
from scipy.stats import rankdata, tiecorrect

from mvproj.errors import NotTwoGroups, TooFewPoints
from mvproj.models.projected import PairedProjection, TwoSampleProjection
from mvproj.models.statistic import TestId, UnivariateStatistic
from mvproj.stats.kernels import joint_le_counts

# rows handled at once by the quadratic Thas kernel
THAS_BLOCK = 512


def _emptied_by_leave_out(proj: TwoSampleProjection) -> bool:
    # a sample-point center drawn from a one-row group leaves that group empty
    if proj.excluded_index is None:
        return False
    sizes = np.bincount(proj.labels, minlength=proj.k + 1)[1:]
    return np.count_nonzero(sizes) < 2


def _two_groups(proj: TwoSampleProjection) -> tuple[np.ndarray, np.ndarray]:
    if proj.k != 2:
        raise NotTwoGroups(f"expected 2 groups, got K = {proj.k}")
    first = np.sort(proj.d[proj.labels == 1])
    second = np.sort(proj.d[proj.labels == 2])
    if first.size == 0 or second.size == 0:
        raise NotTwoGroups(
            f"both groups must be nonempty, got sizes {first.size} and {second.size}")
    return first, second


def _ecdf_gap(first: np.ndarray, second: np.ndarray, points: np.ndarray) -> np.ndarray:
    return (np.searchsorted(first, points, side="right") / first.size
            - np.searchsorted(second, points, side="right") / second.size)


def ks_two_sample(proj: TwoSampleProjection) -> UnivariateStatistic:
    """
    Two-sample Kolmogorov-Smirnov statistic sup |F1 - F2| over the pooled points.

    A sample-point center whose leave-one-out projection has an empty group
    scores 0.

    Args:
        proj (TwoSampleProjection): Distances with two groups.

    Returns:
        UnivariateStatistic: Value in [0, 1].

    Raises:
        NotTwoGroups: Unless exactly two nonempty groups are present.
    """
    if _emptied_by_leave_out(proj):
        return UnivariateStatistic(value=0.0, test_id=TestId.KS, n_effective=proj.n)
    first, second = _two_groups(proj)
    gap = _ecdf_gap(first, second, proj.d)
    return UnivariateStatistic(value=float(np.max(np.abs(gap))), test_id=TestId.KS, n_effective=proj.n)


def cvm_two_sample(proj: TwoSampleProjection) -> UnivariateStatistic:
    """
    Two-sample Cramer-von Mises statistic
    (N1 N2 / N^2) * sum over pooled points of (F1 - F2)^2.

    Args:
        proj (TwoSampleProjection): Distances with two groups.

    Returns:
        UnivariateStatistic: Non-negative value.

    Raises:
        NotTwoGroups: Unless exactly two nonempty groups are present.
    """
    if _emptied_by_leave_out(proj):
        return UnivariateStatistic(value=0.0, test_id=TestId.CVM, n_effective=proj.n)
    first, second = _two_groups(proj)
    gap = _ecdf_gap(first, second, proj.d)
    n = proj.n
    value = first.size * second.size / (n * n) * float(np.sum(gap * gap))
    return UnivariateStatistic(value=value, test_id=TestId.CVM, n_effective=n)


def kruskal_wallis(proj: TwoSampleProjection) -> UnivariateStatistic:
    """
    Tie-corrected Kruskal-Wallis H statistic for K >= 2 groups.

    Returns 0 when every distance is tied, or when a sample-point center
    left its own one-row group empty.

    Raises:
        NotTwoGroups: If fewer than two groups are nonempty.
    """
    if _emptied_by_leave_out(proj):
        return UnivariateStatistic(value=0.0, test_id=TestId.KRUSKAL_WALLIS, n_effective=proj.n)
    sizes = np.bincount(proj.labels, minlength=proj.k + 1)[1:]
    if np.count_nonzero(sizes) < 2:
        raise NotTwoGroups("Kruskal-Wallis needs at least two nonempty groups")
    n = proj.n
    ranks = rankdata(proj.d)
    correction = tiecorrect(ranks)
    if correction == 0.0:
        return UnivariateStatistic(value=0.0, test_id=TestId.KRUSKAL_WALLIS, n_effective=n)
    rank_sums = np.bincount(proj.labels, weights=ranks, minlength=proj.k + 1)[1:]
    present = sizes > 0
    h = 12.0 / (n * (n + 1)) * float(np.sum(rank_sums[present] ** 2 / sizes[present])) - 3.0 * (n + 1)
    return UnivariateStatistic(value=max(h / correction, 0.0), test_id=TestId.KRUSKAL_WALLIS, n_effective=n)


def _max_ranks(values: np.ndarray) -> np.ndarray:
    return np.searchsorted(np.sort(values), values, side="right").astype(np.int64)


def _dot(a: np.ndarray, b: np.ndarray) -> int:
    # python integers: the products overflow int64 for large N
    return sum(map(operator.mul, a.tolist(), b.tolist()))


def hoeffding_d_exact(proj: PairedProjection) -> Fraction:
    """
    Hoeffding's D as an exact rational number.

    With R_i = #{j : x_j <= x_i}, S_i = #{j : y_j <= y_i} and
    Q_i = #{j : x_j <= x_i, y_j <= y_i}:

        D1 = sum (Q-1)(Q-2)
        D2 = sum (R-1)(R-2)(S-1)(S-2)
        D3 = sum (R-2)(S-2)(Q-1)
        D  = 30 [(n-2)(n-3) D1 + D2 - 2(n-2) D3] / [n(n-1)(n-2)(n-3)(n-4)]

    Q comes from a Fenwick-tree sweep, so the cost is O(N log N).

    Raises:
        TooFewPoints: If N' < 5.
    """
    n = proj.n
    if n < 5:
        raise TooFewPoints(f"Hoeffding's D needs at least 5 points, got {n}")
    r = _max_ranks(proj.d_x)
    s = _max_ranks(proj.d_y)
    q = joint_le_counts(r, s, np.argsort(proj.d_x, kind="stable"))
    d1 = _dot(q - 1, q - 2)
    d2 = _dot((r - 1) * (r - 2), (s - 1) * (s - 2))
    d3 = _dot((r - 2) * (s - 2), q - 1)
    numerator = (n - 2) * (n - 3) * d1 + d2 - 2 * (n - 2) * d3
    return Fraction(30 * numerator, n * (n - 1) * (n - 2) * (n - 3) * (n - 4))


def hoeffding_d(proj: PairedProjection) -> UnivariateStatistic:
    """
    Hoeffding's D independence statistic, 30-scaled (1 for a perfectly
    monotone sample, bounded below by -1/2).

    Raises:
        TooFewPoints: If N' < 5.
    """
    return UnivariateStatistic(
        value=float(hoeffding_d_exact(proj)), test_id=TestId.HOEFFDING_D, n_effective=proj.n)


def pearson_2x2(a: int, b: int, c: int, d: int) -> float:
    """
    Pearson chi-square score n(ad - bc)^2 / ((a+b)(c+d)(a+c)(b+d)) of a 2x2 table.

    Returns 0 when any margin is empty.
    """
    denominator = (a + b) * (c + d) * (a + c) * (b + d)
    if denominator == 0:
        return 0.0
    return (a + b + c + d) * (a * d - b * c) ** 2 / denominator


def pearson_scores(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Vectorised `pearson_2x2` over arrays of table counts."""
    a, b, c, d = (np.asarray(v, dtype=np.float64) for v in (a, b, c, d))
    denominator = (a + b) * (c + d) * (a + c) * (b + d)
    numerator = (a + b + c + d) * (a * d - b * c) ** 2
    out = np.zeros_like(numerator)
    np.divide(numerator, denominator, out=out, where=denominator > 0)
    return out


def thas_sum(proj: PairedProjection) -> UnivariateStatistic:
    """
    Sum of Pearson 2x2 scores over the partitions induced by the sample.

    Every point j splits the plane at (d_x[j], d_y[j]); the table counts
    the other N' - 1 points by I(d_x <= d_x[j]) and I(d_y <= d_y[j]).

    Raises:
        TooFewPoints: If N' < 3.
    """
    n = proj.n
    if n < 3:
        raise TooFewPoints(f"the partition sum needs at least 3 points, got {n}")
    d_x, d_y = proj.d_x, proj.d_y
    total = 0.0
    for start in range(0, n, THAS_BLOCK):
        rows = np.arange(start, min(start + THAS_BLOCK, n))
        below_x = d_x[None, :] <= d_x[rows, None]
        below_y = d_y[None, :] <= d_y[rows, None]
        # the partition point itself is not counted
        below_x[np.arange(rows.size), rows] = False
        below_y[np.arange(rows.size), rows] = False
        a = np.count_nonzero(below_x & below_y, axis=1)
        row_x = np.count_nonzero(below_x, axis=1)
        row_y = np.count_nonzero(below_y, axis=1)
        b = row_x - a
        c = row_y - a
        d = (n - 1) - row_x - row_y + a
        total += float(np.sum(pearson_scores(a, b, c, d)))
    return UnivariateStatistic(value=total, test_id=TestId.THAS_SUM, n_effective=n)


UNIVARIATE: Dict[TestId, Callable] = {
    TestId.KS: ks_two_sample,
    TestId.CVM: cvm_two_sample,
    TestId.KRUSKAL_WALLIS: kruskal_wallis,
    TestId.HOEFFDING_D: hoeffding_d,
    TestId.THAS_SUM: thas_sum,
}


def univariate(test_id: TestId, proj: TwoSampleProjection | PairedProjection) -> UnivariateStatistic:
    """Applies the univariate test named by `test_id`."""
    return UNIVARIATE[test_id](proj)
