"""
Reference multivariate statistics and U-statistic lifting.

The energy two-sample statistic and the HHG independence statistic are
computed directly from pairwise distances. They are used to check that
the projection framework reproduces them: the energy statistic is the sum
of per-point scores, and the HHG statistic is the sum of partition-sum
statistics over sample-point centers.
"""

import itertools
import math
from typing import List, Sequence, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from mvproj.errors import NotTwoGroups, TooFewPoints
from mvproj.models.center import CenterSpec, IndepCenter, SamplePointOrigin
from mvproj.models.dataset import LabeledDataset, PairedDataset
from mvproj.models.kernel import KernelSpec
from mvproj.stats.projection import project_independence
from mvproj.stats.univariate import pearson_scores
from mvproj.utils.seeding import rng_for


def _groups(data: LabeledDataset) -> Tuple[np.ndarray, np.ndarray]:
    if data.k != 2:
        raise NotTwoGroups(f"the energy statistic needs K = 2, got K = {data.k}")
    return data.labels == 1, data.labels == 2


def energy_stat(data: LabeledDataset) -> float:
    """
    Energy two-sample statistic

        N1 N2 / N * (2/(N1 N2) sum_between - 1/N1^2 sum_within1 - 1/N2^2 sum_within2)

    over Euclidean pairwise distances.

    Raises:
        NotTwoGroups: Unless K = 2.
    """
    first, second = _groups(data)
    y1, y2 = data.y[first], data.y[second]
    n1, n2 = y1.shape[0], y2.shape[0]
    between = cdist(y1, y2).sum()
    within1 = cdist(y1, y1).sum()
    within2 = cdist(y2, y2).sum()
    return float(n1 * n2 / (n1 + n2) * (
        2.0 * between / (n1 * n2) - within1 / n1 ** 2 - within2 / n2 ** 2))


def energy_scores(data: LabeledDataset) -> np.ndarray:
    """
    Per-point energy scores S_i whose sum is the energy statistic.

    S_i = (mean distance of y_i to group 1 - mean distance to group 2) * w(i),
    w(i) = -N2/N in group 1 and N1/N in group 2.

    Raises:
        NotTwoGroups: Unless K = 2.
    """
    first, second = _groups(data)
    n1, n2, n = int(first.sum()), int(second.sum()), data.n
    distances = cdist(data.y, data.y)
    gap = distances[:, first].mean(axis=1) - distances[:, second].mean(axis=1)
    weights = np.where(first, -n2 / n, n1 / n)
    return gap * weights


def hhg_stat(data: PairedDataset) -> float:
    """
    HHG statistic: sum over ordered pairs i != j of the Pearson score of the
    2x2 table of I(|x_k - x_i| <= |x_j - x_i|), I(|y_k - y_i| <= |y_j - y_i|)
    over the N - 2 points k not in {i, j}.

    Raises:
        TooFewPoints: If N < 3.
    """
    n = data.n
    if n < 3:
        raise TooFewPoints(f"the HHG statistic needs at least 3 points, got {n}")
    dist_x = cdist(data.x, data.x)
    dist_y = cdist(data.y, data.y)
    total = 0.0
    off_diagonal = ~np.eye(n, dtype=bool)
    for i in range(n):
        # counted[j, k]: k is neither the center i nor the partition point j
        counted = off_diagonal.copy()
        counted[:, i] = False
        inside_x = (dist_x[i][None, :] <= dist_x[i][:, None]) & counted
        inside_y = (dist_y[i][None, :] <= dist_y[i][:, None]) & counted
        a = (inside_x & inside_y).sum(axis=1)
        b = (inside_x & ~inside_y).sum(axis=1)
        c = (~inside_x & inside_y & counted).sum(axis=1)
        d = (~inside_x & ~inside_y & counted).sum(axis=1)
        scores = pearson_scores(a, b, c, d)
        scores[i] = 0.0
        total += float(scores.sum())
    return total


def u_statistic(kernel: KernelSpec, points: Sequence[tuple]) -> float:
    """
    Average of a symmetric kernel over all subsets of size `kernel.order`.

    Raises:
        TooFewPoints: If there are fewer points than the kernel order.
    """
    if len(points) < kernel.order:
        raise TooFewPoints(f"order-{kernel.order} kernel needs at least {kernel.order} points")
    total = math.fsum(kernel(subset) for subset in itertools.combinations(points, kernel.order))
    return total / math.comb(len(points), kernel.order)


def u_lift(kernel: KernelSpec) -> KernelSpec:
    """
    Lifts an order-m kernel on projected pairs (u, v) to the order-(m+1)
    kernel on (x, y) points

        f(p_1..p_{m+1}) = 1/(m+1) * sum_c h((|x_k - x_c|, |y_k - y_c|), k != c).

    The U-statistic of f equals the average over sample-point centers of the
    leave-one-out U-statistics of h.
    """
    order = kernel.order

    def lifted(points: Sequence[tuple]) -> float:
        terms = []
        for c, (x_c, y_c) in enumerate(points):
            projected = [
                (float(np.linalg.norm(np.asarray(x_k) - x_c)), float(np.linalg.norm(np.asarray(y_k) - y_c)))
                for k, (x_k, y_k) in enumerate(points) if k != c
            ]
            terms.append(kernel(projected))
        return math.fsum(terms) / (order + 1)

    return KernelSpec(order=order + 1, h=lifted, name=f"lift({kernel.name})")


def as_points(data: PairedDataset) -> List[tuple]:
    """Rows of a paired dataset as (x_i, y_i) tuples for lifted kernels."""
    return [(data.x[i], data.y[i]) for i in range(data.n)]


def centered_average(kernel: KernelSpec, data: PairedDataset) -> float:
    """
    Mean over sample-point centers i of the U-statistic of `kernel` on the
    N - 1 leave-one-out projected distances.
    """
    values = []
    for i in range(data.n):
        center = CenterSpec(
            center=IndepCenter(z_x=tuple(data.x[i].tolist()), z_y=tuple(data.y[i].tolist())),
            origin=SamplePointOrigin(index=i))
        proj = project_independence(center, data)
        values.append(u_statistic(kernel, list(zip(proj.d_x.tolist(), proj.d_y.tolist()))))
    return math.fsum(values) / data.n


def check_symmetric(kernel: KernelSpec, points: Sequence[tuple], seed: int = 0,
                    trials: int = 20, tol: float = 1e-12) -> bool:
    """
    Spot-checks that a kernel is invariant under permutation of its arguments.

    Args:
        kernel (KernelSpec): Kernel to check.
        points (Sequence[tuple]): Pool the arguments are drawn from.
        seed (int): Seed for the draws.
        trials (int): Number of random subsets.
        tol (float): Absolute tolerance.

    Returns:
        bool: True when every shuffled call matches the original.
    """
    rng = rng_for(seed)
    for _ in range(trials):
        chosen = rng.choice(len(points), size=kernel.order, replace=False)
        subset = [points[i] for i in chosen]
        shuffled = [subset[i] for i in rng.permutation(kernel.order)]
        if abs(kernel(subset) - kernel(shuffled)) > tol:
            return False
    return True


def _psi(a: float, b: float, c: float) -> int:
    return int(b <= a) - int(c <= a)


# center index and the pairing of the remaining four points
_HOEFFDING_TERMS = [
    (center, pair_a, pair_b)
    for center in range(5)
    for others in [[i for i in range(5) if i != center]]
    for pair_a, pair_b in (
        ((others[0], others[1]), (others[2], others[3])),
        ((others[0], others[2]), (others[1], others[3])),
        ((others[0], others[3]), (others[1], others[2])),
    )
]


def _hoeffding_h(points: Sequence[tuple]) -> float:
    total = 0
    for center, (i, j), (k, l) in _HOEFFDING_TERMS:
        u, v = points[center]
        total += (_psi(u, points[i][0], points[j][0]) * _psi(u, points[k][0], points[l][0])
                  * _psi(v, points[i][1], points[j][1]) * _psi(v, points[k][1], points[l][1]))
    return total / 2.0


# order-5 kernel whose U-statistic is Hoeffding's D (30-scaled) for tie-free data
HOEFFDING_KERNEL = KernelSpec(order=5, h=_hoeffding_h, name="hoeffding")
