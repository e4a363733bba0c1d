"""
Brute-force implementations used to check the fast statistics and the
algebraic identities between the reference statistics and the
projection framework.
"""

import itertools
import math
from fractions import Fraction

import numpy as np

from mvproj.models.center import CenterSpec, IndepCenter, SamplePointOrigin
from mvproj.models.dataset import LabeledDataset, PairedDataset
from mvproj.models.projected import PairedProjection, TwoSampleProjection
from mvproj.stats.projection import project_independence
from mvproj.stats.univariate import pearson_2x2, thas_sum


def ks_bruteforce(proj: TwoSampleProjection) -> float:
    """Kolmogorov-Smirnov statistic by counting at every pooled point."""
    first = [v for v, g in zip(proj.d.tolist(), proj.labels.tolist()) if g == 1]
    second = [v for v, g in zip(proj.d.tolist(), proj.labels.tolist()) if g == 2]
    best = 0.0
    for t in proj.d.tolist():
        gap = sum(v <= t for v in first) / len(first) - sum(v <= t for v in second) / len(second)
        best = max(best, abs(gap))
    return best


def cvm_bruteforce(proj: TwoSampleProjection) -> float:
    """Cramer-von Mises statistic by counting at every pooled point."""
    first = [v for v, g in zip(proj.d.tolist(), proj.labels.tolist()) if g == 1]
    second = [v for v, g in zip(proj.d.tolist(), proj.labels.tolist()) if g == 2]
    n1, n2 = len(first), len(second)
    total = math.fsum(
        (sum(v <= t for v in first) / n1 - sum(v <= t for v in second) / n2) ** 2
        for t in proj.d.tolist())
    return n1 * n2 / (n1 + n2) ** 2 * total


def hoeffding_bruteforce(proj: PairedProjection) -> Fraction:
    """
    Hoeffding's D (30-scaled) by enumerating its order-5 kernel over all
    5-subsets, in exact integer arithmetic. Matches the rank formula for
    tie-free data.
    """
    n = proj.n
    combos = np.array(list(itertools.combinations(range(n), 5)), dtype=np.int64)
    u, v = proj.d_x[combos], proj.d_y[combos]

    def psi(values: np.ndarray, a: int, b: int, c: int) -> np.ndarray:
        return ((values[:, b] <= values[:, a]).astype(np.int64)
                - (values[:, c] <= values[:, a]).astype(np.int64))

    total = 0
    for center in range(5):
        o = [i for i in range(5) if i != center]
        for (i, j), (k, l) in (((o[0], o[1]), (o[2], o[3])),
                               ((o[0], o[2]), (o[1], o[3])),
                               ((o[0], o[3]), (o[1], o[2]))):
            product = (psi(u, center, i, j) * psi(u, center, k, l)
                       * psi(v, center, i, j) * psi(v, center, k, l))
            total += int(product.sum())
    return Fraction(total, 2 * math.comb(n, 5))


def thas_bruteforce(proj: PairedProjection) -> float:
    """Partition sum by an explicit double loop over partition and counted points."""
    d_x, d_y = proj.d_x.tolist(), proj.d_y.tolist()
    n = len(d_x)
    total = 0.0
    for j in range(n):
        table = [0, 0, 0, 0]
        for k in range(n):
            if k == j:
                continue
            left, low = d_x[k] <= d_x[j], d_y[k] <= d_y[j]
            table[(0 if left else 2) + (0 if low else 1)] += 1
        total += pearson_2x2(*table)
    return total


def summed_thas(data: PairedDataset) -> float:
    """Sum over sample-point centers of the leave-one-out partition sums."""
    total = 0.0
    for i in range(data.n):
        center = CenterSpec(
            center=IndepCenter(z_x=tuple(data.x[i].tolist()), z_y=tuple(data.y[i].tolist())),
            origin=SamplePointOrigin(index=i))
        total += thas_sum(project_independence(center, data)).value
    return total


def cvm_sample_point_sum(data: LabeledDataset) -> float:
    """
    Double loop: for every row i, the Cramer-von Mises statistic of the
    other rows' distances from y_i, summed over i.
    """
    y, labels = data.y, data.labels.tolist()
    total = 0.0
    for i in range(data.n):
        first, second, pooled = [], [], []
        for k in range(data.n):
            if k == i:
                continue
            dist = float(np.sqrt(np.sum((y[k] - y[i]) ** 2)))
            pooled.append(dist)
            (first if labels[k] == 1 else second).append(dist)
        if not first or not second:
            continue
        n1, n2 = len(first), len(second)
        gaps = [
            (sum(v <= t for v in first) / n1 - sum(v <= t for v in second) / n2) ** 2
            for t in pooled
        ]
        total += n1 * n2 / (n1 + n2) ** 2 * math.fsum(gaps)
    return total
