"""
Synthetic data generators
"""

import numpy as np

from mvproj.models.config import Generator, Problem, ScenarioSpec
from mvproj.models.dataset import LabeledDataset, PairedDataset
from mvproj.utils.seeding import STREAM_DATA, rng_for


def _labels(n: int, groups: int) -> np.ndarray:
    return np.repeat(np.arange(1, groups + 1), n)


def _labeled(scenario: ScenarioSpec, rng: np.random.Generator) -> LabeledDataset:
    n, q, groups = scenario.n, scenario.q, scenario.groups
    noise = rng.standard_normal((n * groups, q))
    labels = _labels(n, groups)
    if scenario.generator is Generator.NULL_LOGNORMAL:
        y = np.exp(noise)
    elif scenario.generator is Generator.LOCATION_SHIFT:
        # group k sits (k - 1) * shift away from the origin in every coordinate
        y = noise + ((labels - 1) * scenario.shift)[:, None]
    elif scenario.generator is Generator.SCALE_SHIFT:
        y = noise * np.where(labels == 2, scenario.scale, 1.0)[:, None]
    else:
        y = noise
    return LabeledDataset.build(y, labels.tolist(), k=groups)


def _paired(scenario: ScenarioSpec, rng: np.random.Generator) -> PairedDataset:
    n, p, q = scenario.n, scenario.p, scenario.q
    if scenario.generator is Generator.NULL_INDEP:
        return PairedDataset.build(rng.standard_normal((n, p)), rng.standard_normal((n, q)))
    if scenario.generator is Generator.LINEAR_DEP:
        x = rng.standard_normal((n, p))
        eps = rng.standard_normal((n, q))
        source = x[:, np.arange(q) % p]
        y = scenario.rho * source + np.sqrt(1.0 - scenario.rho ** 2) * eps
        return PairedDataset.build(x, y)
    if scenario.generator is Generator.QUADRATIC_DEP:
        x = rng.uniform(-1.0, 1.0, n)
        y = x ** 2 + scenario.noise * rng.standard_normal(n)
        return PairedDataset.build(x, y)
    # circle
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    x = np.cos(theta) + scenario.noise * rng.standard_normal(n)
    y = np.sin(theta) + scenario.noise * rng.standard_normal(n)
    return PairedDataset.build(x, y)


def generate(scenario: ScenarioSpec, seed: int) -> LabeledDataset | PairedDataset:
    """
    Draws one synthetic dataset; identical (scenario, seed) give identical data.

    Labeled generators put `n` rows in each of `groups` groups; paired
    generators draw `n` pairs.

    Args:
        scenario (ScenarioSpec): Generator and parameters.
        seed (int): Seed.

    Returns:
        LabeledDataset | PairedDataset: The sample.
    """
    rng = rng_for(seed, STREAM_DATA)
    if scenario.generator.problem is Problem.INDEPENDENCE:
        return _paired(scenario, rng)
    return _labeled(scenario, rng)
