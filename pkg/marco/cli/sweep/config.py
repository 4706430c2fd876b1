# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import math
import os
from copy import deepcopy
from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np
import yaml

from marco.cli.utils.validation import deep_diff_paths, unknown_keys, validate_and_fill_dict
from marco.fading.geometry import MAX_SOURCES, Budget, Geometry
from marco.fading.link_random import MAX_SEED
from marco.utils.exception.cli_exception import ConfigValidationError
from marco.utils.exception.fading_exception import InvalidBudgetError, InvalidGeometryError
from marco.utils.exception.solver_exception import InvalidSolverConfigError
from marco.wfsolve.config import SolverConfig
from marco.wfsolve.mixture import MAX_CUTSET_USERS

TEMPLATE_PATH = os.path.join(os.path.dirname(__file__), "template", "default_sweep.yml")

DEFAULT_CONFIG = {
    "geometry": {
        "sources": [[0.0, 0.25], [0.0, -0.25]],
        "destination": [2.0, 0.0],
        "relay": {"y": 0.0, "x": {"start": 0.1, "stop": 1.9, "points": 25}},
        "gamma": 3.0
    },
    "channel": {"theta": 0.5, "budgets": {"sources": 1.0, "relay": 1.0}},
    "ensemble": {"n": 20000, "seed": 1024},
    "solver": SolverConfig().to_dict(),
    "output": {"path": "marc_sweep.csv"}
}

REQUIRED_KEYS = (
    "root['geometry']", "root['geometry']['sources']", "root['geometry']['destination']",
    "root['geometry']['relay']", "root['geometry']['relay']['x']", "root['geometry']['relay']['x']['start']",
    "root['geometry']['relay']['x']['stop']"
)


@dataclass(frozen=True)
class ExperimentConfig:
    """A relay-position sweep.

    ``geometry`` holds the relay at the first sweep point; ``relay_x`` is
    (start, stop, points) along the line ``y = relay_y``.
    """
    geometry: Geometry
    relay_x: Tuple[float, float, int]
    relay_y: float
    budget: Budget
    n: int
    seed: int
    solver: SolverConfig
    output_path: str

    @property
    def k(self) -> int:
        return self.geometry.k

    def relay_positions(self) -> np.ndarray:
        start, stop, points = self.relay_x
        return np.linspace(start, stop, points)

    def with_overrides(self, seed: int = None, output_path: str = None) -> "ExperimentConfig":
        """Copy with the seed and output path replaced where given.

        Raises:
            ConfigValidationError: The seed is not an integer in [0, 2^64).
        """
        changes = {}
        if seed is not None:
            errors = []
            changes["seed"] = _number(errors, "ensemble.seed", seed, int, low=0, high=MAX_SEED)
            if errors:
                raise ConfigValidationError(errors)
        if output_path is not None:
            changes["output_path"] = output_path
        return replace(self, **changes)

    def to_dict(self) -> dict:
        start, stop, points = self.relay_x
        return {
            "geometry": {
                "sources": [list(p) for p in self.geometry.source_positions],
                "destination": list(self.geometry.destination_position),
                "relay": {"y": self.relay_y, "x": {"start": start, "stop": stop, "points": points}},
                "gamma": self.geometry.gamma
            },
            "channel": {
                "theta": self.budget.theta,
                "budgets": {"sources": list(self.budget.p_bar[:-1]), "relay": self.budget.p_bar[-1]}
            },
            "ensemble": {"n": self.n, "seed": self.seed},
            "solver": self.solver.to_dict(),
            "output": {"path": self.output_path}
        }


def dumps(config: ExperimentConfig) -> str:
    return yaml.safe_dump(config.to_dict(), sort_keys=False)


def _number(errors: list, key: str, value, kind=float, low=None, high=None, strict_low=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or (kind is int and not isinstance(value, int)):
        errors.append(f"{key}: expected {'an integer' if kind is int else 'a number'}, got {value!r}")
        return None
    if not math.isfinite(value):
        errors.append(f"{key}: must be finite, got {value!r}")
        return None
    if low is not None and (value <= low if strict_low else value < low):
        errors.append(f"{key}: must be {'>' if strict_low else '>='} {low}, got {value!r}")
        return None
    if high is not None and value >= high:
        errors.append(f"{key}: must be < {high}, got {value!r}")
        return None
    return kind(value)


def _build(document: dict, errors: list):
    geometry_doc = document["geometry"]
    relay_doc = geometry_doc["relay"]
    x_doc = relay_doc["x"]

    start = _number(errors, "geometry.relay.x.start", x_doc["start"])
    stop = _number(errors, "geometry.relay.x.stop", x_doc["stop"])
    points = _number(errors, "geometry.relay.x.points", x_doc["points"], int, low=1)
    relay_y = _number(errors, "geometry.relay.y", relay_doc["y"])
    gamma = _number(errors, "geometry.gamma", geometry_doc["gamma"], low=0, strict_low=True)
    n = _number(errors, "ensemble.n", document["ensemble"]["n"], int, low=1)
    seed = _number(errors, "ensemble.seed", document["ensemble"]["seed"], int, low=0, high=MAX_SEED)

    sources = geometry_doc["sources"]
    if not isinstance(sources, list) or not 1 <= len(sources) <= min(MAX_SOURCES, MAX_CUTSET_USERS):
        errors.append(f"geometry.sources: expected a list of 1..{MAX_CUTSET_USERS} points, got {sources!r}")
        sources = None

    geometry = None
    if None not in (start, stop, points, relay_y, gamma) and sources is not None:
        try:
            geometry = Geometry(tuple(sources), (start, relay_y), geometry_doc["destination"], gamma)
            for x in np.linspace(start, stop, points):
                geometry.with_relay((float(x), relay_y))
        except InvalidGeometryError as e:
            errors.append(f"geometry: {e}")
            geometry = None

    channel = document["channel"]
    source_budgets = channel["budgets"]["sources"]
    if not isinstance(source_budgets, list):
        source_budgets = [source_budgets] * (len(sources) if sources else 1)
    budget = None
    if sources is not None and len(source_budgets) != len(sources):
        errors.append(f"channel.budgets.sources: expected {len(sources)} limits, got {len(source_budgets)}")
    else:
        try:
            budget = Budget(tuple(source_budgets) + (channel["budgets"]["relay"],), channel["theta"])
        except (InvalidBudgetError, TypeError, ValueError) as e:
            errors.append(f"channel: {e}")

    solver = None
    try:
        solver = SolverConfig(**document["solver"])
    except InvalidSolverConfigError as e:
        errors.append(f"solver: {e}")

    output_path = document["output"]["path"]
    if not isinstance(output_path, str) or not output_path:
        errors.append(f"output.path: expected a file path, got {output_path!r}")

    if errors:
        return None
    return ExperimentConfig(geometry, (start, stop, points), relay_y, budget, n, seed, solver, output_path)


def _section_errors(template: dict, document: dict, prefix: str) -> list:
    errors = []
    for key, value in template.items():
        if isinstance(value, dict) and key in document:
            if not isinstance(document[key], dict):
                errors.append(f"{prefix}{key}: expected a mapping, got {document[key]!r}")
            else:
                errors += _section_errors(value, document[key], f"{prefix}{key}.")
    return errors


def validate_config(text: str) -> ExperimentConfig:
    """Parse a YAML sweep config and fill the defaults.

    Every problem is collected before anything is built: missing required keys,
    unknown keys, out-of-range values and invalid geometry or budgets.

    Raises:
        ConfigValidationError: Carrying the whole error list.
    """
    try:
        document = yaml.safe_load(text) if text else None
    except yaml.YAMLError as e:
        raise ConfigValidationError([f"invalid YAML: {e}"])
    document = {} if document is None else document
    if not isinstance(document, dict):
        raise ConfigValidationError([f"expected a mapping at the top level, got {type(document).__name__}"])

    errors = _section_errors(DEFAULT_CONFIG, document, "")
    if errors:
        raise ConfigValidationError(errors)
    optional = deep_diff_paths(DEFAULT_CONFIG, exclude=REQUIRED_KEYS)
    errors = validate_and_fill_dict(deepcopy(DEFAULT_CONFIG), document, optional)
    errors += [f"unknown key {key}" for key in unknown_keys(DEFAULT_CONFIG, document)]
    if errors:
        raise ConfigValidationError(errors)

    errors = []
    config = _build(document, errors)
    if errors:
        raise ConfigValidationError(errors)
    return config


def load_config(path: str) -> ExperimentConfig:
    with open(os.path.expanduser(path), "r") as fr:
        return validate_config(fr.read())
