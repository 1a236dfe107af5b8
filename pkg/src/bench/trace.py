"""Per-iteration swarm trace files (JSON lines).

Line kinds, in file order:
  iteration  one per engine iteration of every decision
  decision   one per decision, after its iterations
  summary    always last; also the only line of an empty trace
"""

import json
from pathlib import Path
from typing import Iterable

from ..planning.engine import EpisodeResult
from .exceptions import BenchError


def trace_records(episodes: Iterable[tuple[int, EpisodeResult]]) -> list[dict]:
    """Flatten (seed, episode) pairs into trace records."""
    records = []
    n_episodes = n_decisions = n_iterations = 0

    for seed, episode in episodes:
        n_episodes += 1
        for index, decision in enumerate(episode.decisions):
            for snapshot in decision.iterations:
                records.append(
                    {"kind": "iteration", "seed": seed, "decision": index, **snapshot.to_dict()}
                )
                n_iterations += 1
            records.append(
                {"kind": "decision", "seed": seed, "decision": index, **decision.to_dict()}
            )
            n_decisions += 1

    records.append(
        {
            "kind": "summary",
            "episodes": n_episodes,
            "decisions": n_decisions,
            "iterations": n_iterations,
        }
    )
    return records


def emit_trace(episodes: Iterable[tuple[int, EpisodeResult]], path: Path) -> Path:
    """
    Write the trace of a completed run.

    Args:
        episodes: (seed, EpisodeResult) pairs in seed order
        path: Destination trace.jsonl

    Returns:
        The path written

    Raises:
        BenchError: If the file cannot be written
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            for record in trace_records(episodes):
                f.write(json.dumps(record) + "\n")
    except OSError as e:
        raise BenchError(f"Cannot write trace {path}: {e}") from e
    return path


def read_trace(path: Path) -> list[dict]:
    """
    Read a trace file back for replay or plotting.

    Raises:
        BenchError: If the file cannot be read or a line is not JSON
    """
    path = Path(path)
    try:
        with open(path, "r") as f:
            lines = [line for line in f if line.strip()]
    except OSError as e:
        raise BenchError(f"Cannot read trace {path}: {e}") from e

    records = []
    for number, line in enumerate(lines, start=1):
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as e:
            raise BenchError(f"{path}:{number}: invalid trace line ({e.msg})") from e
    return records
