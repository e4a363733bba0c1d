"""
Projection of multivariate data to distances from center points,
and generation of the center points themselves.
"""

import logging
import warnings
from typing import List, Tuple

import numpy as np

from mvproj.errors import DegenerateSupport, DimensionMismatch
from mvproj.models.center import (
    CenterSpec, CenterStrategy, FixedList, GaussianMomentFit, IndepCenter,
    SamplePointOrigin, SamplePoints, SampledOrigin, TwoSampleCenter, UniformBoundingBox
)
from mvproj.models.dataset import LabeledDataset, PairedDataset
from mvproj.models.projected import PairedProjection, TwoSampleProjection
from mvproj.utils.seeding import STREAM_CENTERS, STREAM_JITTER, rng_for

logger = logging.getLogger(__name__)

Dataset = LabeledDataset | PairedDataset


def distances_from(z: np.ndarray, y: np.ndarray) -> np.ndarray:
    """
    Euclidean distance of every row of `y` from `z`.

    Args:
        z (np.ndarray): A q-vector.
        y (np.ndarray): An N x q matrix.

    Returns:
        np.ndarray: Length-N non-negative distances.

    Raises:
        DimensionMismatch: If len(z) != q.
    """
    z = np.asarray(z, dtype=np.float64).reshape(-1)
    y = np.asarray(y, dtype=np.float64)
    if y.ndim == 1:
        y = y.reshape(-1, 1)
    if z.shape[0] != y.shape[1]:
        raise DimensionMismatch(f"center has dimension {z.shape[0]} but data has {y.shape[1]} columns")
    return np.linalg.norm(y - z, axis=1)


def _keep_mask(n: int, excluded: int | None) -> np.ndarray | slice:
    if excluded is None:
        return slice(None)
    if not 0 <= excluded < n:
        raise DimensionMismatch(f"sample-point center {excluded} is outside 0..{n - 1}")
    mask = np.ones(n, dtype=bool)
    mask[excluded] = False
    return mask


def project_two_sample(center: CenterSpec, data: LabeledDataset) -> TwoSampleProjection:
    """
    Distances of a labeled sample from one center.

    A sample-point center is taken from the current rows of `data` and its
    own row is left out of the projection.

    Args:
        center (CenterSpec): A K-sample center.
        data (LabeledDataset): The sample.

    Returns:
        TwoSampleProjection: Distances with their group codes.

    Raises:
        DimensionMismatch: Wrong center kind, dimension, or row index.
    """
    if not isinstance(center.center, TwoSampleCenter):
        raise DimensionMismatch("an independence center cannot project labeled data")
    excluded = center.leave_out
    keep = _keep_mask(data.n, excluded)
    z = data.y[excluded] if excluded is not None else np.asarray(center.center.z)
    d = distances_from(z, data.y[keep])
    return TwoSampleProjection(d=d, labels=data.labels[keep], k=data.k, excluded_index=excluded)


def project_independence(center: CenterSpec, data: PairedDataset) -> PairedProjection:
    """
    Paired distances (|x_i - z_x|, |y_i - z_y|) for one center.

    Args:
        center (CenterSpec): An independence center.
        data (PairedDataset): The sample.

    Returns:
        PairedProjection: The paired distances.

    Raises:
        DimensionMismatch: Wrong center kind, dimension, or row index.
    """
    if not isinstance(center.center, IndepCenter):
        raise DimensionMismatch("a K-sample center cannot project paired data")
    excluded = center.leave_out
    keep = _keep_mask(data.n, excluded)
    if excluded is not None:
        z_x, z_y = data.x[excluded], data.y[excluded]
    else:
        z_x, z_y = np.asarray(center.center.z_x), np.asarray(center.center.z_y)
    return PairedProjection(
        d_x=distances_from(z_x, data.x[keep]),
        d_y=distances_from(z_y, data.y[keep]),
        excluded_index=excluded,
    )


def project(center: CenterSpec, data: Dataset) -> TwoSampleProjection | PairedProjection:
    """Dispatches to the projection matching the dataset type."""
    if isinstance(data, LabeledDataset):
        return project_two_sample(center, data)
    return project_independence(center, data)


def jitter(proj: TwoSampleProjection | PairedProjection, seed: int, index: int,
           scale: float = 1e-9) -> TwoSampleProjection | PairedProjection:
    """
    Deterministic tie-breaking perturbation of projected distances.

    Each distance moves by at most `scale` times the largest distance of
    its coordinate; results stay non-negative.

    Args:
        proj: Projected sample.
        seed (int): Master seed.
        index (int): Position of the center, so each center gets its own stream.
        scale (float): Relative magnitude.

    Returns:
        Projected sample of the same kind.
    """
    rng = rng_for(seed, STREAM_JITTER, index)

    def shake(d: np.ndarray) -> np.ndarray:
        size = float(np.max(d)) if d.size else 0.0
        return np.abs(d + rng.uniform(-1.0, 1.0, d.shape[0]) * scale * (size or 1.0))

    if isinstance(proj, TwoSampleProjection):
        return proj.model_copy(update={"d": shake(proj.d)})
    return proj.model_copy(update={"d_x": shake(proj.d_x), "d_y": shake(proj.d_y)})


def check_center(center: CenterSpec, data: Dataset) -> None:
    """
    Raises DimensionMismatch unless the center fits the dataset.
    """
    if isinstance(data, LabeledDataset):
        if not isinstance(center.center, TwoSampleCenter):
            raise DimensionMismatch("labeled data needs K-sample centers")
        if len(center.center.z) != data.q:
            raise DimensionMismatch(f"center has dimension {len(center.center.z)}, data has q = {data.q}")
    else:
        if not isinstance(center.center, IndepCenter):
            raise DimensionMismatch("paired data needs independence centers")
        if len(center.center.z_x) != data.p or len(center.center.z_y) != data.q:
            raise DimensionMismatch(
                f"center has dimensions ({len(center.center.z_x)}, {len(center.center.z_y)}), "
                f"data has (p, q) = ({data.p}, {data.q})")
    if center.leave_out is not None and center.leave_out >= data.n:
        raise DimensionMismatch(f"sample-point center {center.leave_out} is outside 0..{data.n - 1}")


def _blocks(data: Dataset) -> List[np.ndarray]:
    if isinstance(data, LabeledDataset):
        return [data.y]
    return [data.x, data.y]


def _make_center(data: Dataset, parts: List[np.ndarray], origin) -> CenterSpec:
    if isinstance(data, LabeledDataset):
        return CenterSpec(center=TwoSampleCenter(z=tuple(parts[0].tolist())), origin=origin)
    return CenterSpec(
        center=IndepCenter(z_x=tuple(parts[0].tolist()), z_y=tuple(parts[1].tolist())),
        origin=origin,
    )


def _bounding_box(block: np.ndarray, expansion: float) -> Tuple[np.ndarray, np.ndarray]:
    lo, hi = block.min(axis=0), block.max(axis=0)
    pad = (hi - lo) * expansion / 2.0
    return lo - pad, hi + pad


def sample_centers(strategy: CenterStrategy, data: Dataset, seed: int) -> List[CenterSpec]:
    """
    Generates the centers a strategy prescribes.

    Uniform draws use the bounding box of the pooled sample (each block
    separately for paired data), each side widened by `expansion` times its
    length. Gaussian draws use the sample mean and diagonal sample
    covariance. Draws depend only on `seed`.

    Args:
        strategy (CenterStrategy): Which centers.
        data (Dataset): Validated dataset.
        seed (int): Master seed.

    Returns:
        List[CenterSpec]: M centers.

    Raises:
        DimensionMismatch: A fixed center does not fit the data.
    """
    if isinstance(strategy, FixedList):
        for center in strategy.centers:
            check_center(center, data)
        return list(strategy.centers)

    if isinstance(strategy, SamplePoints):
        return [
            _make_center(data, [block[i] for block in _blocks(data)], SamplePointOrigin(index=i))
            for i in range(data.n)
        ]

    rng = rng_for(seed, STREAM_CENTERS)
    draws: List[np.ndarray] = []
    for block in _blocks(data):
        if isinstance(strategy, UniformBoundingBox):
            lo, hi = _bounding_box(block, strategy.expansion)
            if np.any(hi - lo == 0.0):
                warnings.warn(
                    "bounding box has zero volume; centers coincide with the data along flat axes",
                    DegenerateSupport, stacklevel=2)
            draws.append(rng.uniform(lo, hi, size=(strategy.m, block.shape[1])))
        elif isinstance(strategy, GaussianMomentFit):
            mean = block.mean(axis=0)
            std = block.std(axis=0, ddof=1) if block.shape[0] > 1 else np.zeros(block.shape[1])
            if np.any(std == 0.0):
                warnings.warn(
                    "sample variance is zero along some axis; centers are degenerate there",
                    DegenerateSupport, stacklevel=2)
            draws.append(rng.normal(mean, std, size=(strategy.m, block.shape[1])))
    logger.debug("sampled %d centers with strategy %s", strategy.m, strategy.kind)
    origin = SampledOrigin(strategy=strategy.kind)
    return [_make_center(data, [d[i] for d in draws], origin) for i in range(strategy.m)]


def strategy_name(strategy: CenterStrategy) -> str:
    """Short identifier used in reports."""
    if isinstance(strategy, UniformBoundingBox):
        return f"bbox(m={strategy.m},expansion={strategy.expansion:g})"
    if isinstance(strategy, GaussianMomentFit):
        return f"gauss(m={strategy.m})"
    if isinstance(strategy, FixedList):
        return f"fixed(m={len(strategy.centers)})"
    return "sample-points"
