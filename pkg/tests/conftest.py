"""
Shared fixtures and the --runslow switch
"""

import numpy as np
import pytest

from mvproj.models.dataset import LabeledDataset, PairedDataset


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run slow Monte Carlo acceptance studies")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def two_groups(rng):
    y = rng.standard_normal((16, 2))
    y[8:] += 0.5
    return LabeledDataset.build(y, [1] * 8 + [2] * 8)


@pytest.fixture
def paired(rng):
    x = rng.standard_normal((14, 2))
    y = x[:, :1] + 0.5 * rng.standard_normal((14, 1))
    return PairedDataset.build(x, y)
