"""
power command
"""

import argparse
from typing import Any, Dict

from pydantic import ValidationError as PydanticValidationError

from mvproj.commands.emit import emit_power
from mvproj.commands.options import (
    add_output_options, add_pipeline_options, describe_error, parse_sizes, pipeline_config
)
from mvproj.errors import InvalidScenario
from mvproj.harness.power import power_study
from mvproj.models.config import Generator, Problem, ScenarioSpec
from mvproj.models.statistic import TestId

NAME = "power"

SCENARIO_KEYS = ("n", "p", "q", "groups", "shift", "scale", "rho", "noise", "replications", "n_grid")


def register(subparsers: argparse._SubParsersAction) -> None:
    """Adds the command to the CLI."""
    parser = subparsers.add_parser(NAME, help="rejection rates on synthetic data")
    parser.add_argument("--generator", choices=[str(g) for g in Generator])
    parser.add_argument("--n", type=int, help="rows per group (labeled) or pairs (paired)")
    parser.add_argument("--p", type=int, help="dimension of x")
    parser.add_argument("--q", type=int, help="dimension of y")
    parser.add_argument("--groups", type=int, help="groups for labeled generators")
    parser.add_argument("--shift", type=float, help="location shift between consecutive groups")
    parser.add_argument("--scale", type=float, help="scale ratio of group 2")
    parser.add_argument("--rho", type=float, help="linear dependence strength")
    parser.add_argument("--noise", type=float, help="noise of nonlinear dependence")
    parser.add_argument("--replications", type=int, help="replications R per sample size")
    parser.add_argument("--n-grid", dest="n_grid", type=parse_sizes, help="sample sizes, e.g. 50,100,200")
    add_pipeline_options(parser, tests=[str(t) for t in TestId])
    add_output_options(parser)


def scenario(options: Dict[str, Any]) -> ScenarioSpec:
    """
    Scenario from the generator options.

    Raises:
        InvalidScenario: Unknown generator or invalid parameters.
    """
    name = options.get("generator")
    if not name:
        raise InvalidScenario("power needs --generator")
    values = {key: options[key] for key in SCENARIO_KEYS if options.get(key) is not None}
    try:
        return ScenarioSpec(generator=name, **values)
    except PydanticValidationError as e:
        raise InvalidScenario(describe_error(e)) from e


def problem_for(spec: ScenarioSpec) -> Problem:
    """Problem tested on data of the scenario."""
    if spec.generator.problem is Problem.INDEPENDENCE:
        return Problem.INDEPENDENCE
    return Problem.TWO_SAMPLE if spec.groups == 2 else Problem.K_SAMPLE


DEFAULT_TEST = {
    Problem.TWO_SAMPLE: TestId.KS,
    Problem.K_SAMPLE: TestId.KRUSKAL_WALLIS,
    Problem.INDEPENDENCE: TestId.HOEFFDING_D,
}


def handle(options: Dict[str, Any]) -> int:
    """Command handler"""
    spec = scenario(options)
    problem = problem_for(spec)
    config = pipeline_config(options, problem, DEFAULT_TEST[problem])
    emit_power(power_study(config, spec), options)
    return 0
