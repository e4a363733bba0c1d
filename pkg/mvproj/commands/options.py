"""
Options shared by the subcommands and experiment manifests
"""

import argparse
import logging
from typing import Any, Callable, Dict, List, Optional

from dotenv import dotenv_values
from pydantic import ValidationError as PydanticValidationError

from mvproj.errors import InvalidConfig
from mvproj.models.center import (
    CenterSpec, CenterStrategy, FixedList, GaussianMomentFit, SamplePoints, UniformBoundingBox
)
from mvproj.models.config import PipelineConfig, PoolingRule, Problem
from mvproj.models.statistic import TestId
from mvproj.utils.config import settings

logger = logging.getLogger(__name__)

STRATEGIES = ["fixed", "bbox", "gauss", "sample-points"]


def _flag(value: str) -> bool:
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off", ""):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def _names(value: str) -> List[str]:
    return [name.strip() for name in value.split(",") if name.strip()]


def parse_sizes(value: str) -> List[int]:
    return [int(v) for v in _names(value)]


# manifest key -> converter; keys mirror the long flags with '-' -> '_'
CONVERTERS: Dict[str, Callable[[str], Any]] = {
    "input": str,
    "output": str,
    "format": str,
    "label_col": str,
    "x_cols": _names,
    "y_cols": _names,
    "centers": str,
    "center_strategy": str,
    "test": str,
    "pool": str,
    "perms": int,
    "seed": int,
    "alpha": float,
    "exact": _flag,
    "jitter": _flag,
    "n_jobs": int,
    "no_timing": _flag,
    "null_out": str,
    "generator": str,
    "n": int,
    "p": int,
    "q": int,
    "groups": int,
    "shift": float,
    "scale": float,
    "rho": float,
    "noise": float,
    "replications": int,
    "n_grid": parse_sizes,
    "instances": int,
}


def add_output_options(parser: argparse.ArgumentParser) -> None:
    """Options every subcommand takes."""
    parser.add_argument("--output", help="write the report here instead of stdout")
    parser.add_argument("--format", choices=["json", "csv"], help="report format (default json)")
    parser.add_argument("--seed", type=int, help="master seed (fallback: MVPROJ_SEED, then 0)")
    parser.add_argument("--config", help="key=value experiment manifest; flags override it")
    parser.add_argument("--no-timing", dest="no_timing", action="store_const", const=True,
                        help="write runtime_ms as null")


def add_pipeline_options(parser: argparse.ArgumentParser, tests: List[str]) -> None:
    """Options describing the two-step procedure."""
    parser.add_argument("--centers",
                        help="number of centers M, or for --center-strategy fixed a list "
                             "'z1,z2;z1,z2' ('x..|y..' per center for independence)")
    parser.add_argument("--center-strategy", dest="center_strategy", choices=STRATEGIES)
    parser.add_argument("--test", choices=tests, help="univariate test")
    parser.add_argument("--pool", choices=[str(r) for r in PoolingRule], help="pooling rule")
    parser.add_argument("--perms", type=int, help="permutations B")
    parser.add_argument("--alpha", type=float, help="level")
    parser.add_argument("--exact", action="store_const", const=True,
                        help="enumerate every rearrangement instead of sampling")
    parser.add_argument("--jitter", action="store_const", const=True,
                        help="break distance ties by a deterministic perturbation")
    parser.add_argument("--n-jobs", dest="n_jobs", type=int, help="parallel workers")


def add_input_options(parser: argparse.ArgumentParser, paired: bool) -> None:
    """Input file options for labeled or paired data."""
    parser.add_argument("--input", help="CSV file with a header row")
    if paired:
        parser.add_argument("--x-cols", dest="x_cols", type=_names, help="columns of the x block")
    else:
        parser.add_argument("--label-col", dest="label_col", help="group column")
    parser.add_argument("--y-cols", dest="y_cols", type=_names, help="columns of the y block")
    parser.add_argument("--null-out", dest="null_out", help="write the pooled null sample here")


def read_manifest(path: str) -> Dict[str, Any]:
    """
    Reads a flat key=value manifest.

    Raises:
        InvalidConfig: Unknown keys or values that do not parse.
    """
    raw = dotenv_values(path)
    values = {}
    for key, text in raw.items():
        name = key.strip().lower().replace("-", "_")
        if name not in CONVERTERS:
            raise InvalidConfig(f"{path}: unknown key '{key}'")
        try:
            values[name] = CONVERTERS[name](text or "")
        except ValueError as e:
            raise InvalidConfig(f"{path}: bad value for '{key}': {e}") from e
    logger.debug("manifest %s sets %s", path, sorted(values))
    return values


def merge(args: argparse.Namespace) -> Dict[str, Any]:
    """
    Options after precedence: flag, then manifest, then environment/defaults.

    Only keys present on the namespace are kept; absent flags are None.
    """
    options = {key: value for key, value in vars(args).items() if key != "handler"}
    manifest = read_manifest(args.config) if getattr(args, "config", None) else {}
    for key, value in manifest.items():
        if key not in options:
            raise InvalidConfig(f"'{key}' does not apply to the {args.command} command")
        if options[key] is None:
            options[key] = value
    if options.get("seed") is None:
        options["seed"] = settings.SEED if settings.SEED is not None else 0
    if options.get("format") is None:
        options["format"] = "json"
    if options["format"] not in ("json", "csv"):
        raise InvalidConfig(f"unknown format '{options['format']}'; choose json or csv")
    return options


def _floats(text: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as e:
        raise InvalidConfig(f"center '{text}' is not a list of numbers") from e


def parse_centers(text: str, problem: Problem) -> List[CenterSpec]:
    """
    Parses a fixed center list: centers separated by ';', coordinates by ','
    and, for independence, the x and y parts by '|'.
    """
    centers = []
    for part in (p.strip() for p in text.split(";")):
        if not part:
            continue
        if problem is Problem.INDEPENDENCE:
            if part.count("|") != 1:
                raise InvalidConfig(f"independence center '{part}' needs the form 'x..|y..'")
            x_part, y_part = part.split("|")
            centers.append(CenterSpec.fixed_pair(_floats(x_part), _floats(y_part)))
        else:
            centers.append(CenterSpec.fixed(_floats(part)))
    if not centers:
        raise InvalidConfig("the fixed strategy needs at least one center in --centers")
    return centers


def center_strategy(options: Dict[str, Any], problem: Problem) -> CenterStrategy:
    """Center strategy from --center-strategy and --centers."""
    name = options.get("center_strategy") or "bbox"
    if name not in STRATEGIES:
        raise InvalidConfig(f"unknown center strategy '{name}'; choose one of {STRATEGIES}")
    centers = options.get("centers")
    if name == "fixed":
        if not centers:
            raise InvalidConfig("--center-strategy fixed needs --centers")
        return FixedList(centers=parse_centers(centers, problem))
    if name == "sample-points":
        return SamplePoints()
    try:
        m = int(centers) if centers is not None else settings.CENTERS
    except ValueError as e:
        raise InvalidConfig(f"--centers must be an integer for the {name} strategy") from e
    if name == "gauss":
        return GaussianMomentFit(m=m)
    return UniformBoundingBox(m=m, expansion=settings.BBOX_EXPANSION)


def pipeline_config(options: Dict[str, Any], problem: Problem,
                    default_test: TestId) -> PipelineConfig:
    """
    Builds the validated pipeline configuration from merged options.

    Raises:
        InvalidConfig: Inconsistent or out-of-range options.
    """
    try:
        values: Dict[str, Optional[Any]] = {
            "problem": problem,
            "center_strategy": center_strategy(options, problem),
            "univariate": options.get("test") or default_test,
            "pooling": options.get("pool"),
            "b": options.get("perms"),
            "seed": options.get("seed"),
            "alpha": options.get("alpha"),
            "exact": options.get("exact"),
            "jitter": options.get("jitter"),
            "n_jobs": options.get("n_jobs"),
        }
        return PipelineConfig(**{k: v for k, v in values.items() if v is not None})
    except PydanticValidationError as e:
        raise InvalidConfig(describe_error(e)) from e


def describe_error(error: PydanticValidationError) -> str:
    first = error.errors()[0]
    where = ".".join(str(part) for part in first["loc"]) or "config"
    return f"{where}: {first['msg']}"
