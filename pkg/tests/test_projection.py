import warnings

import numpy as np
import pytest
from scipy.stats import special_ortho_group

from mvproj.errors import DegenerateSupport, DimensionMismatch
from mvproj.models.center import (
    CenterSpec, FixedList, GaussianMomentFit, IndepCenter, SamplePointOrigin,
    SamplePoints, TwoSampleCenter, UniformBoundingBox
)
from mvproj.models.dataset import LabeledDataset, PairedDataset
from mvproj.stats.projection import (
    distances_from, jitter, project, project_independence, project_two_sample,
    sample_centers, strategy_name
)


def test_distances_examples():
    np.testing.assert_array_equal(distances_from((0.0, 0.0), np.array([[3.0, 4.0]])), [5.0])
    np.testing.assert_array_equal(
        distances_from((1.0, 1.0), np.array([[1.0, 1.0], [4.0, 5.0]])), [0.0, 5.0])


def test_distances_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        distances_from((0.0,), np.zeros((2, 2)))


def test_distances_triangle_inequality(rng):
    z = rng.standard_normal(3)
    a, b = rng.standard_normal((2, 50, 3))
    gap = np.abs(distances_from(z, a) - distances_from(z, b))
    assert np.all(gap <= np.linalg.norm(a - b, axis=1) + 1e-9)


def test_project_two_sample_fixed_center():
    data = LabeledDataset.build([[1.0], [2.0], [3.0]], [1, 1, 2])
    proj = project_two_sample(CenterSpec.fixed((0.0,)), data)
    np.testing.assert_array_equal(proj.d, [1.0, 2.0, 3.0])
    np.testing.assert_array_equal(proj.labels, [1, 1, 2])
    assert proj.excluded_index is None


def test_project_two_sample_leaves_sample_point_out():
    data = LabeledDataset.build([[1.0], [2.0], [3.0]], [1, 1, 2])
    center = CenterSpec(center=TwoSampleCenter(z=(1.0,)), origin=SamplePointOrigin(index=0))
    proj = project_two_sample(center, data)
    np.testing.assert_array_equal(proj.d, [1.0, 2.0])
    np.testing.assert_array_equal(proj.labels, [1, 2])
    assert proj.excluded_index == 0


def test_projection_translation_invariant(rng):
    y = rng.standard_normal((20, 3))
    shift = np.array([5.0, -2.0, 11.0])
    z = rng.standard_normal(3)
    labels = [1] * 10 + [2] * 10
    before = project(CenterSpec.fixed(z), LabeledDataset.build(y, labels))
    after = project(CenterSpec.fixed(z + shift), LabeledDataset.build(y + shift, labels))
    np.testing.assert_allclose(after.d, before.d, rtol=0, atol=1e-12)


def test_project_independence_fixed_center():
    data = PairedDataset.build([[1.0], [2.0]], [[3.0], [4.0]])
    proj = project_independence(CenterSpec.fixed_pair((0.0,), (0.0,)), data)
    np.testing.assert_array_equal(proj.d_x, [1.0, 2.0])
    np.testing.assert_array_equal(proj.d_y, [3.0, 4.0])


def test_project_independence_sample_point():
    data = PairedDataset.build([[1.0], [2.0], [3.0]], [[3.0], [4.0], [6.0]])
    center = CenterSpec(center=IndepCenter(z_x=(2.0,), z_y=(4.0,)), origin=SamplePointOrigin(index=1))
    proj = project_independence(center, data)
    np.testing.assert_array_equal(proj.d_x, [1.0, 1.0])
    np.testing.assert_array_equal(proj.d_y, [1.0, 2.0])
    assert proj.excluded_index == 1


def test_projection_rotation_invariant(rng):
    x = rng.standard_normal((25, 2))
    y = rng.standard_normal((25, 3))
    z_y = rng.standard_normal(3)
    rotation = special_ortho_group.rvs(3, random_state=rng)
    before = project_independence(CenterSpec.fixed_pair((0.0, 0.0), z_y), PairedDataset.build(x, y))
    after = project_independence(
        CenterSpec.fixed_pair((0.0, 0.0), rotation @ z_y), PairedDataset.build(x, y @ rotation.T))
    np.testing.assert_allclose(after.d_y, before.d_y, rtol=0, atol=1e-12)
    np.testing.assert_array_equal(after.d_x, before.d_x)


def test_wrong_center_kind():
    labeled = LabeledDataset.build([[1.0], [2.0]], [1, 2])
    with pytest.raises(DimensionMismatch):
        project_two_sample(CenterSpec.fixed_pair((0.0,), (0.0,)), labeled)
    with pytest.raises(DimensionMismatch):
        project_two_sample(
            CenterSpec(center=TwoSampleCenter(z=(0.0,)), origin=SamplePointOrigin(index=5)), labeled)


def test_fixed_list_is_returned_as_given(two_groups):
    center = CenterSpec.fixed((0.5, -0.5))
    centers = sample_centers(FixedList(centers=[center]), two_groups, seed=3)
    assert centers == [center]
    assert centers[0].origin.kind == "fixed"


def test_fixed_list_dimension_is_checked(two_groups):
    with pytest.raises(DimensionMismatch):
        sample_centers(FixedList(centers=[CenterSpec.fixed((0.0,))]), two_groups, seed=0)


def test_sample_points_origins():
    data = LabeledDataset.build(np.arange(10.0).reshape(5, 2), [1, 1, 2, 2, 2])
    centers = sample_centers(SamplePoints(), data, seed=0)
    assert [c.origin.index for c in centers] == [0, 1, 2, 3, 4]
    assert centers[3].center.z == (6.0, 7.0)


def test_bounding_box_range(rng):
    y = np.vstack([[[0.0, 0.0], [1.0, 1.0]], rng.random((20, 2))])
    data = LabeledDataset.build(y, [1] * 11 + [2] * 11)
    centers = sample_centers(UniformBoundingBox(m=100, expansion=0.1), data, seed=4)
    z = np.array([c.center.z for c in centers])
    assert z.shape == (100, 2)
    assert np.all(z >= -0.05) and np.all(z <= 1.05)
    assert all(c.origin.kind == "sampled" for c in centers)


def test_sampled_centers_are_deterministic(paired):
    first = sample_centers(GaussianMomentFit(m=5), paired, seed=11)
    second = sample_centers(GaussianMomentFit(m=5), paired, seed=11)
    other = sample_centers(GaussianMomentFit(m=5), paired, seed=12)
    assert first == second
    assert first != other
    assert len(first[0].center.z_x) == 2 and len(first[0].center.z_y) == 1


def test_degenerate_support_warns():
    data = LabeledDataset.build([[1.0, 0.0], [1.0, 1.0], [1.0, 2.0]], [1, 2, 2])
    with pytest.warns(DegenerateSupport):
        sample_centers(UniformBoundingBox(m=3), data, seed=0)
    with pytest.warns(DegenerateSupport):
        sample_centers(GaussianMomentFit(m=3), data, seed=0)


def test_no_warning_on_full_support(two_groups):
    with warnings.catch_warnings():
        warnings.simplefilter("error", DegenerateSupport)
        sample_centers(UniformBoundingBox(m=3), two_groups, seed=0)


def test_jitter_is_small_and_deterministic(two_groups):
    proj = project_two_sample(CenterSpec.fixed((0.0, 0.0)), two_groups)
    first, second = jitter(proj, seed=1, index=0), jitter(proj, seed=1, index=0)
    np.testing.assert_array_equal(first.d, second.d)
    assert np.max(np.abs(first.d - proj.d)) <= 1e-9 * np.max(proj.d)
    assert np.all(first.d >= 0.0)


def test_strategy_names():
    assert strategy_name(UniformBoundingBox(m=5)) == "bbox(m=5,expansion=0.1)"
    assert strategy_name(SamplePoints()) == "sample-points"


def test_jitter_differs_between_centers(two_groups):
    proj = project_two_sample(CenterSpec.fixed((0.0, 0.0)), two_groups)
    first, second = jitter(proj, seed=1, index=0), jitter(proj, seed=1, index=1)
    assert not np.array_equal(first.d - proj.d, second.d - proj.d)
