"""Data models for the planning library."""

from enum import Enum


class ActionSpaceKind(Enum):
    """Kind of action space an environment exposes."""

    DISCRETE = "discrete"
    CONTINUOUS = "continuous"


__all__ = [
    "ActionSpaceKind",
]
