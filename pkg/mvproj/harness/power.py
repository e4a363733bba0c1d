"""
Monte Carlo rejection-rate studies
"""

import logging
import math
from typing import List

from joblib import Parallel, delayed

from mvproj.errors import InvalidScenario
from mvproj.harness.generators import generate
from mvproj.models.center import CenterStrategy, FixedList, SamplePoints
from mvproj.models.config import PipelineConfig, Problem, ScenarioSpec
from mvproj.models.report import PowerRow, PowerTable
from mvproj.pipeline import Pipeline
from mvproj.utils.config import settings
from mvproj.utils.seeding import STREAM_DATA, STREAM_REPLICATION, derive_seed

logger = logging.getLogger(__name__)


def center_count(strategy: CenterStrategy, scenario: ScenarioSpec) -> int:
    """M for a strategy on data of the scenario's size; sample points use every row."""
    if isinstance(strategy, FixedList):
        return len(strategy.centers)
    if isinstance(strategy, SamplePoints):
        if scenario.generator.problem is Problem.INDEPENDENCE:
            return scenario.n
        return scenario.n * scenario.groups
    return strategy.m


def replicate(config: PipelineConfig, scenario: ScenarioSpec, size: int, r: int) -> float:
    """
    P-value of replication `r` at sample size `size`.

    Data and pipeline seeds are derived from (master seed, size, r) only.
    """
    data = generate(scenario.at(size), derive_seed(config.seed, STREAM_DATA, size, r))
    rep = config.model_copy(update={
        "seed": derive_seed(config.seed, STREAM_REPLICATION, size, r),
        "n_jobs": 1,
    })
    return Pipeline.run(rep, data, timing=False).p_value


def rejection_pvalues(config: PipelineConfig, scenario: ScenarioSpec, size: int) -> List[float]:
    """P-values of all R replications at one sample size, in replication order."""
    parallel = Parallel(n_jobs=config.n_jobs, backend=settings.BACKEND)
    return parallel(
        delayed(replicate)(config, scenario, size, r) for r in range(scenario.replications))


def power_study(config: PipelineConfig, scenario: ScenarioSpec) -> PowerTable:
    """
    Rejection rate at level alpha for every sample size in the scenario grid.

    Args:
        config (PipelineConfig): Pipeline run on every replication.
        scenario (ScenarioSpec): Generator, grid and R.

    Returns:
        PowerTable: Rate and binomial standard error per sample size.

    Raises:
        InvalidScenario: Generator does not fit the configured problem, or a
            grid size is too small for the univariate test.
    """
    wants_pairs = config.problem is Problem.INDEPENDENCE
    if (scenario.generator.problem is Problem.INDEPENDENCE) != wants_pairs:
        raise InvalidScenario(f"generator {scenario.generator} does not produce {config.problem} data")
    if config.problem is Problem.TWO_SAMPLE and scenario.groups != 2:
        raise InvalidScenario("the two-sample problem needs a scenario with 2 groups")
    scenario.check_grid(config.univariate)

    rows = []
    for size in scenario.sizes():
        pvalues = rejection_pvalues(config, scenario, size)
        rejections = sum(p <= config.alpha for p in pvalues)
        reps = len(pvalues)
        rate = rejections / reps
        if reps > 1:
            se = math.sqrt(rate * (1.0 - rate) / reps)
        else:
            se = None
            logger.warning("a single replication has no standard error")
        rows.append(PowerRow(n=size, replications=reps, rejections=rejections, rate=rate, se=se))
        logger.info("n=%d: rejection rate %.4f over %d replications", size, rate, reps)

    centers = center_count(config.center_strategy, scenario.at(scenario.sizes()[-1]))
    return PowerTable(
        method=Pipeline.method(config, centers),
        scenario=str(scenario.generator),
        alpha=config.alpha,
        seed=config.seed,
        rows=rows,
    )
