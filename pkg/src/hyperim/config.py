"""Experiment configuration: a flat key-value document plus flag overrides.

A config file is one flat JSON object; command-line flags override file
values; everything else falls back to the defaults below (the reference
experimental setting: 5-hop propagation, 100 Monte-Carlo simulations,
population and offspring of 100, 2 elites, tournament of 5, 100
generations, seed sets of 1..100 nodes, top-30% initialization, SICP
probability drawn from [0.005, 0.02], 5 independent runs).

Per-dataset linear-threshold values ship in ``data/lt_thresholds.json``;
``theta`` must still be set explicitly (or via ``theta_preset``) because
thresholds are dataset-specific.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources

from .evolutionary import EAParams
from .propagation import SICP, LinearThreshold, PropagationModel, SpreadConfig, WeightedCascade

ALGORITHMS = ("hn-moea", "random", "high-degree")
MODELS = ("wc", "sicp", "lt")

DEFAULTS: dict = {
    "algorithm": "hn-moea",
    "p_min": 0.005,
    "p_max": 0.02,
    "max_hops": 5,
    "num_simulations": 100,
    "population_size": 100,
    "offspring_size": 100,
    "generations": 100,
    "elites": 2,
    "tournament_size": 5,
    "k_min": 1,
    "k_max": 100,
    "lambda_fraction": 0.30,
    "num_runs": 5,
    "seed": 0,
    "output": "report",
}

_INT_KEYS = {
    "max_hops", "num_simulations", "population_size", "offspring_size", "generations",
    "elites", "tournament_size", "k_min", "k_max", "num_runs", "seed", "jobs",
}
_FLOAT_KEYS = {"theta", "p_min", "p_max", "lambda_fraction"}
_STR_KEYS = {"dataset", "algorithm", "model", "output", "theta_preset"}
KNOWN_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS


class ConfigError(ValueError):
    """Invalid or missing configuration field."""


def lt_theta_presets() -> dict[str, float]:
    """Dataset-name -> linear-threshold value presets shipped with the package."""
    text = resources.files("hyperim").joinpath("data/lt_thresholds.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class RunConfig:
    dataset: str
    algorithm: str
    model: PropagationModel
    spread: SpreadConfig
    ea: EAParams
    num_runs: int
    seed: int
    output: str
    jobs: int

    def to_flat(self) -> dict:
        """Flat key-value echo; feeding it back to parse_config reproduces the run."""
        flat: dict = {"dataset": self.dataset, "algorithm": self.algorithm}
        if isinstance(self.model, WeightedCascade):
            flat["model"] = "wc"
        elif isinstance(self.model, SICP):
            flat["model"] = "sicp"
            flat["p_min"] = self.model.p_min
            flat["p_max"] = self.model.p_max
        else:
            flat["model"] = "lt"
            flat["theta"] = self.model.theta
        flat.update(
            max_hops=self.spread.max_hops,
            num_simulations=self.spread.num_simulations,
            population_size=self.ea.population_size,
            offspring_size=self.ea.offspring_size,
            generations=self.ea.generations,
            elites=self.ea.elites,
            tournament_size=self.ea.tournament_size,
            k_min=self.ea.k_min,
            k_max=self.ea.k_max,
            lambda_fraction=self.ea.lambda_fraction,
            num_runs=self.num_runs,
            seed=self.seed,
            output=self.output,
            jobs=self.jobs,
        )
        return flat


def _coerce(key: str, value):
    try:
        if key in _INT_KEYS:
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError(f"not an integer: {value!r}")
            return int(value)
        if key in _FLOAT_KEYS:
            return float(value)
        return str(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"field '{key}': {exc}") from exc


def default_jobs() -> int:
    env = os.environ.get("HYPERIM_JOBS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def parse_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Merge defaults, a flat JSON config file, and flag overrides into a RunConfig.

    Precedence: overrides > file > defaults.  Unknown keys are rejected.
    LT forces num_simulations to 1; the deterministic high-degree algorithm
    forces num_runs to 1.
    """
    merged: dict = dict(DEFAULTS)
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold one flat JSON object")
        for key in data:
            if key not in KNOWN_KEYS:
                raise ConfigError(f"unknown config key '{key}'")
        merged.update(data)
    for key, value in (overrides or {}).items():
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown config key '{key}'")
        if value is not None:
            merged[key] = value

    merged = {k: _coerce(k, v) for k, v in merged.items()}

    if "dataset" not in merged:
        raise ConfigError("field 'dataset': required")
    if "model" not in merged:
        raise ConfigError("field 'model': required (one of wc, sicp, lt)")
    if merged["model"] not in MODELS:
        raise ConfigError(f"field 'model': must be one of {MODELS}, got '{merged['model']}'")
    if merged["algorithm"] not in ALGORITHMS:
        raise ConfigError(f"field 'algorithm': must be one of {ALGORITHMS}, got '{merged['algorithm']}'")

    if merged["model"] == "lt" and "theta" not in merged and "theta_preset" in merged:
        presets = lt_theta_presets()
        name = merged["theta_preset"].lower()
        if name not in presets:
            raise ConfigError(f"field 'theta_preset': unknown preset '{name}' (have {sorted(presets)})")
        merged["theta"] = presets[name]

    model: PropagationModel
    if merged["model"] == "wc":
        model = WeightedCascade()
    elif merged["model"] == "sicp":
        try:
            model = SICP(merged["p_min"], merged["p_max"])
        except ValueError as exc:
            raise ConfigError(f"field 'p_min'/'p_max': {exc}") from exc
    else:
        if "theta" not in merged:
            raise ConfigError("field 'theta': required when model is lt")
        try:
            model = LinearThreshold(merged["theta"])
        except ValueError as exc:
            raise ConfigError(f"field 'theta': {exc}") from exc
        merged["num_simulations"] = 1

    if merged["algorithm"] == "high-degree":
        merged["num_runs"] = 1
    if merged["num_runs"] < 1:
        raise ConfigError("field 'num_runs': must be >= 1")

    try:
        spread = SpreadConfig(
            max_hops=merged["max_hops"],
            num_simulations=merged["num_simulations"],
            rng_seed=merged["seed"],
        )
    except ValueError as exc:
        raise ConfigError(f"field 'max_hops'/'num_simulations': {exc}") from exc
    try:
        ea = EAParams(
            population_size=merged["population_size"],
            offspring_size=merged["offspring_size"],
            generations=merged["generations"],
            elites=merged["elites"],
            tournament_size=merged["tournament_size"],
            k_min=merged["k_min"],
            k_max=merged["k_max"],
            lambda_fraction=merged["lambda_fraction"],
            rng_seed=merged["seed"],
        )
    except ValueError as exc:
        raise ConfigError(f"evolutionary parameters: {exc}") from exc

    return RunConfig(
        dataset=merged["dataset"],
        algorithm=merged["algorithm"],
        model=model,
        spread=spread,
        ea=ea,
        num_runs=merged["num_runs"],
        seed=merged["seed"],
        output=merged["output"],
        jobs=merged.get("jobs", default_jobs()),
    )
