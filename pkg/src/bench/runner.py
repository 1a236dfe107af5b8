"""Seeded episode runs, comparisons and the samples-per-step efficiency ratio."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

import pandas as pd

from ..bridge.client import RemoteEnvironment
from ..bridge.exceptions import BridgeError
from ..environments import make_environment
from ..environments.base import Environment
from ..planning.engine import EpisodeResult
from ..planning.exceptions import ContractViolationError
from .agents import Agent, make_agent
from .config import RunConfig
from .exceptions import ConfigError
from .results import ResultRow, write_results
from .trace import emit_trace

logger = logging.getLogger(__name__)

# Shown instead of a ratio when either side spent no samples
MISSING_EFFICIENCY = "-----"

COMPARE_COLUMNS = [
    "agent",
    "environment",
    "episodes",
    "mean_score",
    "mean_samples_per_step",
    "efficiency",
]


@contextmanager
def open_environment(config: RunConfig) -> Iterator[Environment]:
    """Resolve the configured environment; bridged sessions are closed on exit.

    Raises:
        ConfigError: If the environment cannot be resolved or reached
    """
    if not config.is_bridged:
        try:
            env = make_environment(config.environment)
        except KeyError as e:
            raise ConfigError(str(e.args[0])) from e
        yield env
        return

    try:
        env = RemoteEnvironment.connect(config.environment)
    except BridgeError as e:
        raise ConfigError(f"Cannot open {config.environment}: {e}") from e
    try:
        yield env
    finally:
        env.close()


def _play(agent: Agent, env: Environment, seed: int, max_steps: int):
    start = time.perf_counter()
    episode = agent.play(env, seed, max_steps)
    wall_time_ms = (time.perf_counter() - start) * 1000.0

    row = ResultRow(
        agent=agent.name,
        environment=env.name,
        seed=seed,
        total_score=episode.total_score,
        steps=episode.steps,
        samples_per_step=episode.samples_per_step,
        wall_time_ms=wall_time_ms,
    )
    logger.info(
        f"{agent.name} on {env.name} seed={seed}: score={episode.total_score:.2f}, "
        f"steps={episode.steps}, samples/step={episode.samples_per_step:.1f}"
    )
    return row, episode


def run_episodes(config: RunConfig) -> list[tuple[ResultRow, EpisodeResult]]:
    """
    Play every configured seed and return rows with their episodes, ordered by seed.

    Raises:
        ConfigError: If the environment or agent is unusable (before any episode runs)
    """
    agent = make_agent(config)

    with open_environment(config) as env:
        agent.check(env)
        max_steps = config.max_steps or env.descriptor.max_episode_steps

        # Remote sessions are a single ordered stream
        workers = 1 if config.is_bridged else config.workers
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(
                    pool.map(lambda s: _play(agent, env, s, max_steps), config.seeds)
                )
        else:
            results = [_play(agent, env, seed, max_steps) for seed in config.seeds]

    return sorted(results, key=lambda pair: pair[0].seed)


def run(config: RunConfig, trace: bool = False) -> list[ResultRow]:
    """
    Run the configured episodes and write results.csv and results.json.

    Args:
        config: Validated run configuration
        trace: Also write the swarm trace of every decision

    Returns:
        One ResultRow per episode, ordered by seed
    """
    results = run_episodes(config)
    rows = [row for row, _ in results]

    output = config.output
    write_results(rows, output.csv_path, output.json_path, append=output.append)
    logger.info(f"Wrote {len(rows)} rows to {output.csv_path} and {output.json_path}")

    if trace:
        emit_trace([(row.seed, episode) for row, episode in results], output.trace_path)
        logger.info(f"Wrote trace to {output.trace_path}")
    return rows


def efficiency(baseline_samples_per_step: float, fmc_samples_per_step: float) -> float:
    """
    Samples-per-step ratio of a baseline planner over FMC.

    Raises:
        ContractViolationError: If either input is not positive
    """
    if baseline_samples_per_step <= 0 or fmc_samples_per_step <= 0:
        raise ContractViolationError(
            f"Samples per step must be positive, got {baseline_samples_per_step} "
            f"and {fmc_samples_per_step}"
        )
    return baseline_samples_per_step / fmc_samples_per_step


def format_efficiency(value: Optional[float]) -> str:
    """Render a ratio as "x N" (nearest integer, thousands separators)."""
    if value is None or pd.isna(value):
        return MISSING_EFFICIENCY
    return f"x {int(round(float(value))):,}"


def summarize(rows: list[ResultRow]) -> dict:
    df = pd.DataFrame([r.to_dict() for r in rows])
    return {
        "agent": df["agent"].iloc[0],
        "environment": df["environment"].iloc[0],
        "episodes": len(df),
        "mean_score": float(df["total_score"].mean()),
        "mean_samples_per_step": float(df["samples_per_step"].mean()),
    }


def compare(config_a: RunConfig, config_b: RunConfig) -> pd.DataFrame:
    """
    Run two configurations over the same seeds and tabulate them.

    The efficiency column is config_a's mean samples per step over each
    row's own; a row where either side spent no samples gets NaN.

    Raises:
        ConfigError: If environments or seeds differ
    """
    if config_a.environment != config_b.environment:
        raise ConfigError(
            f"Cannot compare different environments: {config_a.environment} vs {config_b.environment}"
        )
    if list(config_a.seeds) != list(config_b.seeds):
        raise ConfigError("Compared configurations must use the same seeds")

    summaries = [
        summarize([row for row, _ in run_episodes(config)]) for config in (config_a, config_b)
    ]
    baseline = summaries[0]["mean_samples_per_step"]
    for summary in summaries:
        try:
            summary["efficiency"] = efficiency(baseline, summary["mean_samples_per_step"])
        except ContractViolationError:
            summary["efficiency"] = float("nan")

    return pd.DataFrame(summaries, columns=COMPARE_COLUMNS)


def format_table(table: pd.DataFrame) -> str:
    """Aligned-text rendering of a comparison table."""
    # to_string skips formatters on NaN, so efficiency is rendered up front
    rendered = table.assign(efficiency=table["efficiency"].map(format_efficiency))
    return rendered.to_string(
        index=False,
        formatters={
            "mean_score": "{:.2f}".format,
            "mean_samples_per_step": "{:.1f}".format,
        },
    )


def write_comparison(table: pd.DataFrame, directory: Path) -> tuple[Path, Path]:
    """Write compare.csv and compare.txt into `directory`."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    csv_path, text_path = directory / "compare.csv", directory / "compare.txt"
    table.to_csv(csv_path, index=False)
    text_path.write_text(format_table(table) + "\n")
    return csv_path, text_path
