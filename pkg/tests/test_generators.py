import numpy as np
import pytest

from mvproj.errors import InvalidScenario
from mvproj.harness.generators import generate
from mvproj.models.config import ScenarioSpec
from mvproj.models.dataset import LabeledDataset, PairedDataset


@pytest.mark.parametrize("generator", [
    "null-gaussian", "null-lognormal", "location-shift", "scale-shift",
    "null-indep", "linear-dep", "quadratic-dep", "circle-dep",
])
def test_same_seed_same_data(generator):
    spec = ScenarioSpec(generator=generator, n=20, rho=0.5, shift=1.0, scale=2.0, noise=0.1)
    first, second = generate(spec, 42), generate(spec, 42)
    np.testing.assert_array_equal(first.y, second.y)
    other = generate(spec, 43)
    assert not np.array_equal(first.y, other.y)


def test_zero_shift_is_the_null_scenario():
    shifted = generate(ScenarioSpec(generator="location-shift", n=25, q=3, shift=0.0), 7)
    null = generate(ScenarioSpec(generator="null-gaussian", n=25, q=3), 7)
    assert isinstance(shifted, LabeledDataset)
    assert shifted.y.shape == (50, 3)
    np.testing.assert_array_equal(shifted.y, null.y)
    np.testing.assert_array_equal(shifted.labels, null.labels)


def test_location_shift_moves_groups():
    data = generate(ScenarioSpec(generator="location-shift", n=2000, q=2, groups=3, shift=1.0), 1)
    means = [data.y[data.labels == k].mean() for k in (1, 2, 3)]
    assert means == pytest.approx([0.0, 1.0, 2.0], abs=0.1)
    assert data.k == 3


def test_scale_shift_widens_second_group():
    data = generate(ScenarioSpec(generator="scale-shift", n=2000, scale=3.0), 2)
    ratio = data.y[data.labels == 2].std() / data.y[data.labels == 1].std()
    assert ratio == pytest.approx(3.0, rel=0.1)


def test_lognormal_is_positive():
    data = generate(ScenarioSpec(generator="null-lognormal", n=100, q=2), 3)
    assert np.all(data.y > 0.0)


def test_circle_has_zero_correlation_but_total_dependence():
    data = generate(ScenarioSpec(generator="circle-dep", n=2000, noise=0.0), 5)
    assert isinstance(data, PairedDataset)
    np.testing.assert_allclose(data.x[:, 0] ** 2 + data.y[:, 0] ** 2, 1.0, atol=1e-12)
    assert abs(np.corrcoef(data.x[:, 0], data.y[:, 0])[0, 1]) < 0.1


def test_full_linear_dependence():
    data = generate(ScenarioSpec(generator="linear-dep", n=30, p=2, q=3, rho=1.0), 6)
    np.testing.assert_array_equal(data.y[:, 0], data.x[:, 0])
    np.testing.assert_array_equal(data.y[:, 1], data.x[:, 1])
    np.testing.assert_array_equal(data.y[:, 2], data.x[:, 0])


def test_quadratic_dependence_without_noise():
    data = generate(ScenarioSpec(generator="quadratic-dep", n=50), 4)
    np.testing.assert_array_equal(data.y[:, 0], data.x[:, 0] ** 2)


def test_invalid_scenarios():
    with pytest.raises(InvalidScenario):
        ScenarioSpec(generator="circle-dep", q=2)
    with pytest.raises(InvalidScenario):
        ScenarioSpec(generator="scale-shift", groups=4)


@pytest.mark.parametrize("generator, kind", [
    ("null-gaussian", LabeledDataset), ("scale-shift", LabeledDataset),
    ("null-indep", PairedDataset), ("quadratic-dep", PairedDataset),
])
def test_generator_problem_picks_dataset_kind(generator, kind):
    assert isinstance(generate(ScenarioSpec(generator=generator, n=10), 0), kind)
