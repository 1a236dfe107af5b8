"""Run configuration with pydantic validation."""

import math
from pathlib import Path
from typing import List, Literal, Optional

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from ..environments import ENVIRONMENTS
from ..models.planner_params import FmcParams, UctParams
from .exceptions import ConfigError

AGENTS = ("fmc", "uct", "random", "oracle")
BRIDGE_SCHEMES = ("tcp://", "exec:")


class FmcSettings(BaseModel):
    """FMC planner settings (defaults: 30 walkers, horizon 15, repeat 5, 300 samples)."""

    n_walkers: int = Field(default=30, ge=1)
    time_horizon: float = Field(default=15, gt=0)
    dt: int = Field(default=5, ge=1)
    max_samples: int = Field(default=300, ge=1)

    @model_validator(mode="after")
    def check_budget(self) -> "FmcSettings":
        if self.max_samples < self.n_walkers:
            raise ValueError(
                f"max_samples ({self.max_samples}) must be ≥ n_walkers ({self.n_walkers})"
            )
        if self.time_horizon < self.dt:
            raise ValueError(f"time_horizon ({self.time_horizon}) must be ≥ dt ({self.dt})")
        return self

    def to_params(self, seed: int = 0) -> FmcParams:
        return FmcParams(
            n_walkers=self.n_walkers,
            time_horizon=self.time_horizon,
            dt=self.dt,
            max_samples=self.max_samples,
            seed=seed,
        )


class UctSettings(BaseModel):
    """UCT baseline settings."""

    exploration_c: float = Field(default=math.sqrt(2), ge=0)
    rollout_horizon: int = Field(default=15, ge=1)
    budget_samples: int = Field(default=300, ge=1)

    def to_params(self, seed: int = 0) -> UctParams:
        return UctParams(
            exploration_c=self.exploration_c,
            rollout_horizon=self.rollout_horizon,
            budget_samples=self.budget_samples,
            seed=seed,
        )


class OracleSettings(BaseModel):
    """Exhaustive-search agent settings."""

    horizon: int = Field(default=6, ge=0)


class OutputSettings(BaseModel):
    """Where result files are written."""

    directory: str = "results"
    csv_name: str = "results.csv"
    json_name: str = "results.json"
    trace_name: str = "trace.jsonl"
    append: bool = False

    @property
    def csv_path(self) -> Path:
        return Path(self.directory) / self.csv_name

    @property
    def json_path(self) -> Path:
        return Path(self.directory) / self.json_name

    @property
    def trace_path(self) -> Path:
        return Path(self.directory) / self.trace_name


class RunConfig(BaseModel):
    """Root configuration of a bench run.

    `seeds` may be omitted, in which case episode i uses base_seed + i.
    """

    environment: str = "chain_trap"
    agent: Literal["fmc", "uct", "random", "oracle"] = "fmc"
    episodes: int = Field(default=1, ge=1)
    seeds: List[int] = Field(default_factory=list)
    base_seed: int = 0
    max_steps: Optional[int] = Field(default=None, ge=1)
    workers: int = Field(default=1, ge=1)
    fmc: FmcSettings = Field(default_factory=FmcSettings)
    uct: UctSettings = Field(default_factory=UctSettings)
    oracle: OracleSettings = Field(default_factory=OracleSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)

    @field_validator("environment")
    @classmethod
    def validate_environment(cls, environment: str) -> str:
        """Accept a registered environment name or a bridge endpoint."""
        if environment.startswith(BRIDGE_SCHEMES) or environment in ENVIRONMENTS:
            return environment
        known = ", ".join(sorted(ENVIRONMENTS))
        raise ValueError(
            f"Unknown environment {environment!r} (known: {known}, or tcp://host:port, exec:<command>)"
        )

    @model_validator(mode="after")
    def resolve_seeds(self) -> "RunConfig":
        """Derive seeds from base_seed, or check they match the episode count."""
        if not self.seeds:
            self.seeds = [self.base_seed + i for i in range(self.episodes)]
        elif len(self.seeds) != self.episodes:
            raise ValueError(
                f"episodes ({self.episodes}) must equal the number of seeds ({len(self.seeds)})"
            )
        return self

    @property
    def is_bridged(self) -> bool:
        return self.environment.startswith(BRIDGE_SCHEMES)


def parse_run_config(data: dict) -> RunConfig:
    """
    Build a RunConfig from a plain dict.

    Raises:
        ConfigError: If validation fails
    """
    try:
        return RunConfig(**(data or {}))
    except ValidationError as e:
        raise ConfigError(f"Invalid run configuration: {e}") from e


def load_run_config(config_path: str) -> RunConfig:
    """
    Load a run configuration file.

    The file is a single JSON document; YAML is accepted as well since
    JSON is a subset of it.

    Args:
        config_path: Path to configuration file

    Returns:
        RunConfig: Parsed and validated configuration

    Raises:
        ConfigError: If the file is missing, unparsable or invalid
    """
    config_file = Path(config_path)
    if not config_file.exists():
        raise ConfigError(f"Configuration file not found: {config_path}")

    try:
        with open(config_file, "r") as f:
            config_data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"Cannot parse {config_path}: {e}") from e

    if config_data is not None and not isinstance(config_data, dict):
        raise ConfigError(f"{config_path} must contain a single object")

    return parse_run_config(config_data)


def apply_overrides(config: RunConfig, **overrides) -> RunConfig:
    """
    Return a copy of `config` with CLI flag values applied.

    Keys: env, agent, walkers, horizon, max_samples, dt, seeds, episodes,
    out, max_steps, workers. None values are ignored.

    Raises:
        ConfigError: If the overridden configuration is invalid
    """
    data = config.model_dump()
    mapping = {
        "env": ("environment",),
        "agent": ("agent",),
        "walkers": ("fmc", "n_walkers"),
        "horizon": ("fmc", "time_horizon"),
        "max_samples": ("fmc", "max_samples"),
        "dt": ("fmc", "dt"),
        "episodes": ("episodes",),
        "out": ("output", "directory"),
        "max_steps": ("max_steps",),
        "workers": ("workers",),
    }
    for key, value in overrides.items():
        if value is None:
            continue
        if key == "seeds":
            data["seeds"] = list(value)
            if overrides.get("episodes") is None:
                data["episodes"] = len(data["seeds"])
            continue
        if key not in mapping:
            raise ConfigError(f"Unknown override {key!r}")
        *parents, leaf = mapping[key]
        target = data
        for parent in parents:
            target = target[parent]
        target[leaf] = value

    # Derived seeds must follow a changed episode count
    if overrides.get("seeds") is None and overrides.get("episodes") is not None:
        data["seeds"] = []

    return parse_run_config(data)
