"""Result rows and their CSV/JSON files."""

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import pandas as pd

from .exceptions import BenchError

RESULT_COLUMNS = [
    "agent",
    "environment",
    "seed",
    "total_score",
    "steps",
    "samples_per_step",
    "wall_time_ms",
]


@dataclass(frozen=True)
class ResultRow:
    """Outcome of one seeded episode.

    Attributes:
        agent: Agent name
        environment: Environment name
        seed: Episode seed
        total_score: Sum of rewards
        steps: Environment steps taken
        samples_per_step: Planning samples per decision
        wall_time_ms: Episode wall time (the only non-deterministic field)
    """

    agent: str
    environment: str
    seed: int
    total_score: float
    steps: int
    samples_per_step: float
    wall_time_ms: float

    def __post_init__(self):
        if self.samples_per_step < 0:
            raise ValueError(f"samples_per_step must be ≥ 0, got {self.samples_per_step}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ResultRow":
        return cls(
            agent=str(data["agent"]),
            environment=str(data["environment"]),
            seed=int(data["seed"]),
            total_score=float(data["total_score"]),
            steps=int(data["steps"]),
            samples_per_step=float(data["samples_per_step"]),
            wall_time_ms=float(data["wall_time_ms"]),
        )


def rows_to_frame(rows: list[ResultRow]) -> pd.DataFrame:
    """Result rows as a DataFrame with the canonical column order."""
    return pd.DataFrame([r.to_dict() for r in rows], columns=RESULT_COLUMNS)


def read_results_csv(path: Path) -> list[ResultRow]:
    df = pd.read_csv(path, float_precision="round_trip")
    return [ResultRow.from_dict(record) for record in df.to_dict(orient="records")]


def read_results_json(path: Path) -> list[ResultRow]:
    with open(path, "r") as f:
        return [ResultRow.from_dict(record) for record in json.load(f)]


def write_results(
    rows: list[ResultRow], csv_path: Path, json_path: Path, append: bool = False
) -> None:
    """Write rows to CSV and JSON; with `append`, existing rows are kept first.

    Raises:
        BenchError: If a file cannot be read or written
    """
    csv_path, json_path = Path(csv_path), Path(json_path)
    try:
        if append:
            previous_csv = read_results_csv(csv_path) if csv_path.exists() else []
            previous_json = read_results_json(json_path) if json_path.exists() else []
        else:
            previous_csv, previous_json = [], []

        csv_path.parent.mkdir(parents=True, exist_ok=True)
        rows_to_frame(previous_csv + rows).to_csv(csv_path, index=False)

        json_path.parent.mkdir(parents=True, exist_ok=True)
        with open(json_path, "w") as f:
            json.dump([r.to_dict() for r in previous_json + rows], f, indent=2)
    except OSError as e:
        raise BenchError(f"Cannot write results to {e.filename or csv_path}: {e}") from e
