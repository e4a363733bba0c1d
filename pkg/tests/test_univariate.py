from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import kruskal

from mvproj.errors import NotTwoGroups, TooFewPoints
from mvproj.models.projected import PairedProjection, TwoSampleProjection
from mvproj.models.statistic import TestId
from mvproj.stats import univariate as univariate_module
from mvproj.stats.oracles import (
    cvm_bruteforce, hoeffding_bruteforce, ks_bruteforce, thas_bruteforce
)
from mvproj.stats.univariate import (
    cvm_two_sample, hoeffding_d, hoeffding_d_exact, ks_two_sample, kruskal_wallis,
    pearson_2x2, pearson_scores, thas_sum, univariate
)


def two_sample(first, second):
    d = np.array(list(first) + list(second), dtype=np.float64)
    labels = np.array([1] * len(first) + [2] * len(second))
    return TwoSampleProjection(d=d, labels=labels)


def paired(d_x, d_y):
    return PairedProjection(d_x=np.asarray(d_x, dtype=np.float64), d_y=np.asarray(d_y, dtype=np.float64))


def test_ks_examples():
    assert ks_two_sample(two_sample([1, 2, 3], [1, 2, 3])).value == 0.0
    assert ks_two_sample(two_sample([1, 2], [3, 4])).value == 1.0
    assert ks_two_sample(two_sample([1, 3], [2, 4])).value == 0.5


def test_cvm_examples():
    assert cvm_two_sample(two_sample([1, 2, 3], [1, 2, 3])).value == 0.0
    assert cvm_two_sample(two_sample([1], [2])).value == pytest.approx(0.25)


def test_rank_statistics_ignore_monotone_transforms(rng):
    first, second = rng.random(9) + 0.1, rng.random(7) + 0.3
    plain = two_sample(first, second)
    cubed = two_sample(first ** 3, second ** 3)
    assert ks_two_sample(cubed).value == ks_two_sample(plain).value
    assert cvm_two_sample(cubed).value == pytest.approx(cvm_two_sample(plain).value, abs=1e-12)


@pytest.mark.parametrize("seed", range(40))
def test_two_sample_statistics_match_counting(seed):
    rng = np.random.default_rng(seed)
    n1, n2 = rng.integers(1, 16, size=2)
    # rounding creates ties
    d = np.round(rng.random(n1 + n2), 1)
    proj = TwoSampleProjection(d=d, labels=rng.permutation(np.repeat([1, 2], [n1, n2])))
    assert ks_two_sample(proj).value == pytest.approx(ks_bruteforce(proj), abs=1e-12)
    assert cvm_two_sample(proj).value == pytest.approx(cvm_bruteforce(proj), abs=1e-12)


def test_two_sample_statistics_need_two_groups():
    three = TwoSampleProjection(d=np.arange(3.0), labels=np.array([1, 2, 3]), k=3)
    with pytest.raises(NotTwoGroups):
        ks_two_sample(three)
    empty = TwoSampleProjection(d=np.arange(3.0), labels=np.array([1, 1, 1]))
    with pytest.raises(NotTwoGroups):
        cvm_two_sample(empty)


def test_kruskal_wallis_matches_scipy(rng):
    groups = [np.round(rng.random(size), 1) for size in (6, 8, 5)]
    proj = TwoSampleProjection(
        d=np.concatenate(groups), labels=np.repeat([1, 2, 3], [6, 8, 5]), k=3)
    assert kruskal_wallis(proj).value == pytest.approx(kruskal(*groups).statistic, rel=1e-12)


def test_kruskal_wallis_all_tied():
    proj = TwoSampleProjection(d=np.ones(6), labels=np.array([1, 1, 2, 2, 3, 3]), k=3)
    assert kruskal_wallis(proj).value == 0.0


def test_hoeffding_monotone_is_one():
    assert hoeffding_d_exact(paired([1, 2, 3, 4, 5], [1, 2, 3, 4, 5])) == 1
    assert hoeffding_d(paired([1, 2, 3, 4, 5], [5, 4, 3, 2, 1])).value == 1.0
    assert hoeffding_bruteforce(paired([1, 2, 3, 4, 5], [1, 2, 3, 4, 5])) == 1


def test_hoeffding_is_symmetric(rng):
    d_x, d_y = rng.random(12), rng.random(12)
    assert hoeffding_d_exact(paired(d_x, d_y)) == hoeffding_d_exact(paired(d_y, d_x))


@pytest.mark.parametrize("seed", range(30))
def test_hoeffding_matches_kernel_enumeration(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, 13))
    proj = paired(rng.permutation(n), rng.permutation(n))
    fast = hoeffding_d_exact(proj)
    assert isinstance(fast, Fraction)
    assert fast == hoeffding_bruteforce(proj)
    low, high = hoeffding_d(proj).bounds
    assert low <= float(fast) <= high


def test_hoeffding_large_sample_stays_exact():
    n = 5000
    proj = paired(np.arange(n), np.arange(n))
    assert hoeffding_d_exact(proj) == 1


def test_hoeffding_needs_five_points():
    with pytest.raises(TooFewPoints):
        hoeffding_d(paired([1, 2, 3, 4], [1, 2, 3, 4]))


def test_pearson_examples():
    assert pearson_2x2(1, 1, 1, 1) == 0.0
    assert pearson_2x2(2, 0, 0, 2) == 4.0
    assert pearson_2x2(0, 0, 3, 5) == 0.0
    np.testing.assert_array_equal(
        pearson_scores(np.array([1, 2, 0]), np.array([1, 0, 0]), np.array([1, 0, 3]), np.array([1, 2, 5])),
        [0.0, 4.0, 0.0])


def test_thas_all_tables_degenerate():
    assert thas_sum(paired([1, 2, 3], [2, 3, 1])).value == 0.0


def test_thas_comonotone():
    proj = paired(np.arange(10.0), np.arange(10.0))
    value = thas_sum(proj).value
    assert value > 0.0
    assert value == pytest.approx(thas_bruteforce(proj), abs=1e-12)


def test_thas_ignores_monotone_transforms(rng):
    d_x, d_y = rng.random(20), rng.random(20)
    assert thas_sum(paired(np.exp(d_x), d_y ** 3)).value == pytest.approx(
        thas_sum(paired(d_x, d_y)).value, abs=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_thas_matches_double_loop(seed, monkeypatch):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 31))
    proj = paired(rng.random(n), rng.random(n))
    expected = thas_bruteforce(proj)
    assert thas_sum(proj).value == pytest.approx(expected, rel=1e-12, abs=1e-12)
    # several blocks must give the same sum
    monkeypatch.setattr(univariate_module, "THAS_BLOCK", 4)
    assert thas_sum(proj).value == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_thas_needs_three_points():
    with pytest.raises(TooFewPoints):
        thas_sum(paired([1, 2], [1, 2]))


def test_dispatch():
    stat = univariate(TestId.KS, two_sample([1, 3], [2, 4]))
    assert stat.test_id is TestId.KS
    assert stat.n_effective == 4
    assert stat.bounds == (0.0, 1.0)


@pytest.mark.parametrize("statistic", [ks_two_sample, cvm_two_sample, kruskal_wallis])
def test_group_emptied_by_leave_out_scores_zero(statistic):
    proj = TwoSampleProjection(d=np.arange(5.0), labels=np.ones(5, dtype=np.int64), excluded_index=5)
    assert statistic(proj).value == 0.0


@pytest.mark.parametrize("seed", range(10))
def test_two_sample_statistics_ignore_group_names(seed):
    rng = np.random.default_rng(seed)
    n1, n2 = (int(v) for v in rng.integers(1, 15, size=2))
    d = np.round(rng.random(n1 + n2), 2)
    labels = rng.permutation(np.repeat([1, 2], [n1, n2]))
    proj = TwoSampleProjection(d=d, labels=labels)
    swapped = TwoSampleProjection(d=d, labels=3 - labels)
    assert ks_two_sample(swapped).value == ks_two_sample(proj).value
    assert cvm_two_sample(swapped).value == pytest.approx(cvm_two_sample(proj).value, rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("transform", [np.sqrt, np.exp, np.log1p, lambda d: 3.0 * d + 7.0])
@pytest.mark.parametrize("seed", range(5))
def test_two_sample_statistics_ignore_increasing_maps(transform, seed):
    rng = np.random.default_rng(seed)
    n1, n2 = (int(v) for v in rng.integers(2, 15, size=2))
    # a tenth-grid keeps ties, which any increasing map preserves
    d = np.round(rng.random(n1 + n2), 1)
    labels = rng.permutation(np.repeat([1, 2], [n1, n2]))
    plain = TwoSampleProjection(d=d, labels=labels)
    moved = TwoSampleProjection(d=transform(d), labels=labels)
    assert ks_two_sample(moved).value == ks_two_sample(plain).value
    assert cvm_two_sample(moved).value == pytest.approx(cvm_two_sample(plain).value, rel=1e-12, abs=1e-15)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(200))
def test_hoeffding_matches_kernel_enumeration_up_to_thirty(seed):
    rng = np.random.default_rng(1000 + seed)
    n = int(rng.integers(5, 31))
    proj = paired(rng.permutation(n), rng.permutation(n))
    assert hoeffding_d_exact(proj) == hoeffding_bruteforce(proj)
