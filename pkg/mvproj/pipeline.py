"""
Pipeline main module
"""

import logging
import time
from typing import List, Optional, Tuple

import numpy as np

from mvproj.errors import InvalidConfig, NotTwoGroups
from mvproj.models.center import CenterSpec
from mvproj.models.config import PipelineConfig, PoolingRule, Problem
from mvproj.models.dataset import LabeledDataset, PairedDataset
from mvproj.models.permutation import PermutationMode, PermutationPlan
from mvproj.models.report import CenterResult, MethodDescriptor, TestReport
from mvproj.models.statistic import TestId
from mvproj.stats.permutation import NullDistribution, count_at_least, permutation_null
from mvproj.stats.pooling import (
    bonferroni_global, hommel_global, pooled_scores, pooled_value
)
from mvproj.stats.projection import jitter, project, sample_centers, strategy_name
from mvproj.stats.univariate import univariate

logger = logging.getLogger(__name__)

Dataset = LabeledDataset | PairedDataset


class CenterStatistics:  # pylint: disable=R0903
    """
    Per-center univariate statistics of a dataset, with the centers held fixed.

    Instances are picklable so permutation workers can call them.

    Attributes:
        centers (List[CenterSpec]): The M centers.
        test_id (TestId): Univariate test.
        jitter_seed (Optional[int]): Seed of the tie-breaking jitter, None when off.
    """

    def __init__(self, centers: List[CenterSpec], test_id: TestId,
                 jitter_seed: Optional[int] = None) -> None:
        self.centers = centers
        self.test_id = test_id
        self.jitter_seed = jitter_seed

    def __call__(self, data: Dataset) -> np.ndarray:
        values = np.empty(len(self.centers), dtype=np.float64)
        for m, center in enumerate(self.centers):
            proj = project(center, data)
            if self.jitter_seed is not None:
                proj = jitter(proj, self.jitter_seed, m)
            values[m] = univariate(self.test_id, proj).value
        return values


class Pipeline:
    """
    Two-step testing procedure: project to distances from centers, apply a
    univariate test per center, pool the M results into one p-value.

    Methods:
        check: Verify a configuration fits a dataset.
        calibrate: Run the procedure and keep the pooled null sample.
        run: Run the procedure and return the report.
    """

    @staticmethod
    def check(config: PipelineConfig, data: Dataset) -> None:
        """
        Verifies the dataset type matches the configured problem.

        Raises:
            InvalidConfig: Labeled vs paired mismatch.
            NotTwoGroups: Two-sample problem on data with K != 2.
        """
        if config.problem is Problem.INDEPENDENCE:
            if not isinstance(data, PairedDataset):
                raise InvalidConfig("the independence problem needs paired x/y data")
            return
        if not isinstance(data, LabeledDataset):
            raise InvalidConfig(f"the {config.problem} problem needs labeled data")
        if config.problem is Problem.TWO_SAMPLE and data.k != 2:
            raise NotTwoGroups(f"the two-sample problem needs K = 2, got K = {data.k}")

    @staticmethod
    def method(config: PipelineConfig, m: int,
               dist: Optional[NullDistribution] = None) -> MethodDescriptor:
        """
        Descriptor of the configured procedure.

        With `dist` the descriptor reflects the calibration that actually ran;
        without it the configured number of permutations is reported.
        """
        exact = dist.exact if dist is not None else config.exact
        rows = int(dist.null.shape[0]) if dist is not None else config.b
        if config.pooling.is_global:
            calibration, pooling_permutations = "global-null", 0
        else:
            calibration = "exact" if exact else "permutation"
            pooling_permutations = rows
        return MethodDescriptor(
            problem=str(config.problem),
            center_strategy=strategy_name(config.center_strategy),
            m=m,
            univariate=str(config.univariate),
            pooling=str(config.pooling),
            calibration=calibration,
            pooling_permutations=pooling_permutations,
        )

    @staticmethod
    def calibrate(config: PipelineConfig, data: Dataset,
                  timing: bool = True) -> Tuple[TestReport, Optional[np.ndarray]]:
        """
        Runs the procedure.

        Centers are generated once from the master seed and held fixed;
        the same B rearrangements give every per-center p-value and the
        null distribution of the pooled statistic.

        Args:
            config (PipelineConfig): Procedure.
            data (Dataset): Validated dataset.
            timing (bool): Record runtime_ms; off for byte-identical reports.

        Returns:
            Tuple[TestReport, Optional[np.ndarray]]: The report and the pooled
            null sample (None for global-null rules).
        """
        started = time.perf_counter()
        Pipeline.check(config, data)
        centers = sample_centers(config.center_strategy, data, config.seed)
        statistic = CenterStatistics(
            centers, config.univariate, config.seed if config.jitter else None)
        mode = (PermutationMode.PAIR_PERMUTE if config.problem is Problem.INDEPENDENCE
                else PermutationMode.LABEL_PERMUTE)
        plan = PermutationPlan(mode=mode, b=config.b, master_seed=config.seed,
                               exact=config.exact, n_jobs=config.n_jobs)
        logger.info("running %s/%s/%s with M=%d, B=%d",
                    config.problem, config.univariate, config.pooling, len(centers), config.b)
        dist = permutation_null(statistic, data, plan)
        observed_p = dist.pvalues(dist.observed)[0]

        statistic_value, p_value, pooled_null = Pipeline._pool(config.pooling, dist, observed_p)
        method = Pipeline.method(config, len(centers), dist)

        elapsed = int(round((time.perf_counter() - started) * 1000))
        report = TestReport(
            method=method,
            statistic=statistic_value,
            p_value=p_value,
            per_center=[
                CenterResult(center=center, statistic=float(s), p_value=float(p))
                for center, s, p in zip(centers, dist.observed, observed_p)
            ],
            B=int(dist.null.shape[0]),
            seed=config.seed,
            runtime_ms=elapsed if timing else None,
        )
        logger.info("p-value %.6g (statistic %.6g) in %d ms", p_value, statistic_value, elapsed)
        return report, pooled_null

    @staticmethod
    def _pool(rule: PoolingRule, dist: NullDistribution,
              observed_p: np.ndarray) -> Tuple[float, float, Optional[np.ndarray]]:
        if rule is PoolingRule.BONFERRONI_GLOBAL:
            value = bonferroni_global(observed_p)
            return value, value, None
        if rule is PoolingRule.HOMMEL_GLOBAL:
            value = hommel_global(observed_p)
            return value, value, None

        null_p = dist.pvalues(dist.null)
        null_scores = pooled_scores(dist.null, null_p, rule)
        observed_score = float(pooled_scores(dist.observed, observed_p, rule)[0])
        hits = count_at_least(null_scores, observed_score)
        total = null_scores.shape[0]
        p_value = hits / total if dist.exact else (1 + hits) / (total + 1)
        statistic_value = pooled_value(dist.observed, observed_p, rule)
        # min/max p are reported as p-values, not as negated scores
        if rule in (PoolingRule.MIN_P, PoolingRule.MAX_P):
            null_scores = -null_scores
        return statistic_value, p_value, null_scores

    @staticmethod
    def run(config: PipelineConfig, data: Dataset, timing: bool = True) -> TestReport:
        """Runs the procedure and returns its report."""
        return Pipeline.calibrate(config, data, timing)[0]


def run_pipeline(config: PipelineConfig, data: Dataset, timing: bool = True) -> TestReport:
    """Module-level shortcut for `Pipeline.run`."""
    return Pipeline.run(config, data, timing)
