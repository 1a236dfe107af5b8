"""Planning engine module: FMC swarm, UCT baseline and exhaustive oracle."""

from .exceptions import (
    PlanningError,
    ContractViolationError,
    ParameterError,
    DegenerateSliceError,
    AllWalkersDeadError,
    UnsupportedSpaceError,
    SizeLimitError,
)
from .engine import FmcEngine, EpisodeResult, TrajectoryStep
from .oracle import ActionValueTable, exhaustive_values, oracle_best_action
from .uct import UctPlanner, uct_decide, uct_plan_step

__all__ = [
    "FmcEngine",
    "EpisodeResult",
    "TrajectoryStep",
    "ActionValueTable",
    "exhaustive_values",
    "oracle_best_action",
    "UctPlanner",
    "uct_decide",
    "uct_plan_step",
    "PlanningError",
    "ContractViolationError",
    "ParameterError",
    "DegenerateSliceError",
    "AllWalkersDeadError",
    "UnsupportedSpaceError",
    "SizeLimitError",
]
