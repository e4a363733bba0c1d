import pytest
from pydantic import ValidationError as PydanticValidationError

from mvproj.errors import InvalidConfig, InvalidScenario
from mvproj.models.center import CenterSpec, FixedList, UniformBoundingBox
from mvproj.models.config import (
    Generator, PipelineConfig, PoolingRule, Problem, ScenarioSpec, default_strategy
)
from mvproj.models.permutation import PermutationMode, PermutationPlan
from mvproj.models.statistic import TestId
from mvproj.utils.config import Settings
from mvproj.utils.seeding import derive_seed, rng_for


def test_settings_defaults(monkeypatch):
    for key in ("SEED", "PERMUTATIONS", "ALPHA", "CENTERS"):
        monkeypatch.delenv(f"MVPROJ_{key}", raising=False)
    settings = Settings(_env_file=None)
    assert settings.SEED is None
    assert settings.PERMUTATIONS == 1000
    assert settings.ALPHA == 0.05
    assert settings.CENTERS == 50
    assert settings.BBOX_EXPANSION == 0.1


def test_settings_read_environment(monkeypatch):
    monkeypatch.setenv("MVPROJ_SEED", "17")
    monkeypatch.setenv("MVPROJ_PERMUTATIONS", "250")
    settings = Settings(_env_file=None)
    assert settings.SEED == 17
    assert settings.PERMUTATIONS == 250


def test_pipeline_config_defaults():
    config = PipelineConfig(problem=Problem.TWO_SAMPLE, univariate=TestId.KS)
    assert config.pooling is PoolingRule.MIN_P
    assert isinstance(config.center_strategy, UniformBoundingBox)
    assert config.center_strategy.expansion == pytest.approx(0.1)
    assert config.seed == 0


@pytest.mark.parametrize("problem, test", [
    ("independence", "ks"),
    ("independence", "cvm"),
    ("two-sample", "hoeffding"),
    ("two-sample", "thas"),
    ("k-sample", "ks"),
])
def test_pipeline_config_rejects_incompatible_test(problem, test):
    with pytest.raises(InvalidConfig):
        PipelineConfig(problem=problem, univariate=test)


def test_pipeline_config_rejects_center_of_wrong_kind():
    strategy = FixedList(centers=[CenterSpec.fixed_pair((0.0,), (0.0,))])
    with pytest.raises(InvalidConfig):
        PipelineConfig(problem="two-sample", univariate="ks", center_strategy=strategy)


def test_pooling_rule_global_flag():
    assert PoolingRule.BONFERRONI_GLOBAL.is_global
    assert PoolingRule.HOMMEL_GLOBAL.is_global
    assert not PoolingRule.FISHER_LOG_P.is_global


def test_scenario_validation():
    with pytest.raises(InvalidScenario):
        ScenarioSpec(generator="quadratic-dep", p=2)
    with pytest.raises(InvalidScenario):
        ScenarioSpec(generator="scale-shift", groups=3)
    with pytest.raises(PydanticValidationError):
        ScenarioSpec(generator="null-gaussian", replications=0)


def test_scenario_grid_minimum():
    spec = ScenarioSpec(generator=Generator.NULL_INDEP, n_grid=[4, 20])
    with pytest.raises(InvalidScenario):
        spec.check_grid(TestId.HOEFFDING_D)
    ScenarioSpec(generator=Generator.NULL_INDEP, n_grid=[6, 20]).check_grid(TestId.HOEFFDING_D)
    assert spec.sizes() == [4, 20]
    assert ScenarioSpec(generator=Generator.NULL_GAUSSIAN, n=30).sizes() == [30]


def test_generator_problem():
    assert Generator.CIRCLE_DEP.problem is Problem.INDEPENDENCE
    assert Generator.LOCATION_SHIFT.problem is Problem.TWO_SAMPLE


def test_default_strategy():
    assert default_strategy(7).m == 7


def test_derive_seed_is_deterministic_and_keyed():
    assert derive_seed(1, 2, 3) == derive_seed(1, 2, 3)
    assert derive_seed(1, 2, 3) != derive_seed(1, 3, 2)
    assert derive_seed(1) != derive_seed(2)
    assert 0 <= derive_seed(-5, 7) < 2 ** 64
    assert rng_for(9, 1).integers(0, 2 ** 31) == rng_for(9, 1).integers(0, 2 ** 31)


@pytest.mark.parametrize("n_jobs", [1, 4, -1])
def test_worker_counts_accepted(n_jobs):
    config = PipelineConfig(problem=Problem.TWO_SAMPLE, univariate=TestId.KS, n_jobs=n_jobs)
    assert config.n_jobs == n_jobs


def test_zero_workers_rejected():
    with pytest.raises(PydanticValidationError):
        PipelineConfig(problem=Problem.TWO_SAMPLE, univariate=TestId.KS, n_jobs=0)
    with pytest.raises(PydanticValidationError):
        PermutationPlan(mode=PermutationMode.LABEL_PERMUTE, n_jobs=0)
