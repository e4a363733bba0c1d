"""
Algebraic self-checks on random instances
"""

import logging
import math
from typing import Callable, Iterator, List, Sequence

import numpy as np

from mvproj.models.dataset import LabeledDataset, PairedDataset
from mvproj.models.kernel import KernelSpec
from mvproj.models.projected import PairedProjection, TwoSampleProjection
from mvproj.models.report import SelftestCheck, SelftestReport
from mvproj.stats.oracles import (
    cvm_bruteforce, hoeffding_bruteforce, ks_bruteforce, summed_thas, thas_bruteforce
)
from mvproj.stats.reference import (
    as_points, centered_average, energy_scores, energy_stat, hhg_stat, u_lift, u_statistic
)
from mvproj.stats.univariate import cvm_two_sample, hoeffding_d_exact, ks_two_sample, thas_sum
from mvproj.utils.seeding import rng_for

logger = logging.getLogger(__name__)

TOLERANCE = 1e-10

# one error value per instance; a check passes when every error is within tolerance
Check = Callable[[np.random.Generator], float]


def _gap(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _two_sample_projection(rng: np.random.Generator) -> TwoSampleProjection:
    n1, n2 = (int(v) for v in rng.integers(1, 16, size=2))
    labels = np.repeat([1, 2], [n1, n2])
    return TwoSampleProjection(d=rng.random(n1 + n2), labels=rng.permutation(labels))


def _paired_projection(rng: np.random.Generator, low: int = 5) -> PairedProjection:
    n = int(rng.integers(low, 31))
    return PairedProjection(d_x=rng.random(n), d_y=rng.random(n))


def _paired_data(rng: np.random.Generator, low: int, high: int) -> PairedDataset:
    n = int(rng.integers(low, high + 1))
    p, q = (int(v) for v in rng.integers(1, 4, size=2))
    return PairedDataset.build(rng.standard_normal((n, p)), rng.standard_normal((n, q)))


def _labeled_data(rng: np.random.Generator) -> LabeledDataset:
    n1, n2 = (int(v) for v in rng.integers(2, 51, size=2))
    q = int(rng.integers(1, 4))
    labels = np.repeat([1, 2], [n1, n2])
    return LabeledDataset.build(rng.standard_normal((n1 + n2, q)), labels.tolist())


def check_ks(rng: np.random.Generator) -> float:
    """KS fast path against counting."""
    proj = _two_sample_projection(rng)
    return _gap(ks_two_sample(proj).value, ks_bruteforce(proj))


def check_cvm(rng: np.random.Generator) -> float:
    """CVM fast path against counting."""
    proj = _two_sample_projection(rng)
    return _gap(cvm_two_sample(proj).value, cvm_bruteforce(proj))


def check_hoeffding(rng: np.random.Generator) -> float:
    """Rank formula against kernel enumeration, in exact arithmetic."""
    proj = _paired_projection(rng, low=5)
    if proj.n > 20:
        proj = PairedProjection(d_x=proj.d_x[:20], d_y=proj.d_y[:20])
    return float(abs(hoeffding_d_exact(proj) - hoeffding_bruteforce(proj)))


def check_thas(rng: np.random.Generator) -> float:
    """Blocked partition sum against the double loop."""
    proj = _paired_projection(rng, low=3)
    return _gap(thas_sum(proj).value, thas_bruteforce(proj))


def check_energy(rng: np.random.Generator) -> float:
    """Energy statistic against the sum of its per-point scores."""
    data = _labeled_data(rng)
    return _gap(energy_stat(data), float(energy_scores(data).sum()))


def check_hhg(rng: np.random.Generator) -> float:
    """HHG statistic against partition sums over sample-point centers."""
    data = _paired_data(rng, 3, 30)
    return _gap(hhg_stat(data), summed_thas(data))


def _product(points: Sequence[tuple]) -> float:
    (u, v), = points
    return u * v


def _concordance(points: Sequence[tuple]) -> float:
    (u1, v1), (u2, v2) = points
    return float(np.sign(u1 - u2) * np.sign(v1 - v2))


LIFT_KERNELS = [
    KernelSpec(order=1, h=_product, name="product"),
    KernelSpec(order=2, h=_concordance, name="concordance"),
]


def check_lift(rng: np.random.Generator) -> float:
    """Lifted U-statistic against the average of leave-one-out U-statistics."""
    data = _paired_data(rng, 3, 8)
    return max(
        _gap(u_statistic(u_lift(kernel), as_points(data)), centered_average(kernel, data))
        for kernel in LIFT_KERNELS)


CHECKS: List[tuple[str, Check]] = [
    ("ks-bruteforce", check_ks),
    ("cvm-bruteforce", check_cvm),
    ("hoeffding-bruteforce", check_hoeffding),
    ("thas-bruteforce", check_thas),
    ("energy-decomposition", check_energy),
    ("hhg-summed-thas", check_hhg),
    ("u-statistic-lift", check_lift),
]


def _errors(check: Check, seed: int, index: int, instances: int) -> Iterator[float]:
    for i in range(instances):
        yield check(rng_for(seed, index, i))


def run_selftest(seed: int = 0, instances: int = 20) -> SelftestReport:
    """
    Runs every check on `instances` freshly seeded random instances.

    Args:
        seed (int): Master seed.
        instances (int): Instances per check.

    Returns:
        SelftestReport: Pass/fail summary.
    """
    results = []
    for index, (name, check) in enumerate(CHECKS):
        errors = list(_errors(check, seed, index, instances))
        failures = sum(not math.isfinite(e) or e > TOLERANCE for e in errors)
        if failures:
            logger.warning("%s failed on %d of %d instances", name, failures, instances)
        results.append(SelftestCheck(
            name=name, instances=instances, failures=failures, max_error=max(errors)))
    return SelftestReport(seed=seed, passed=all(r.passed for r in results), checks=results)
