"""Environment contract models: step outcomes and descriptors."""

from dataclasses import dataclass
from typing import Any

from .action_space import ActionSpace


@dataclass(frozen=True)
class StepOutcome:
    """Result of one environment transition.

    Attributes:
        next_state: Opaque, immutable state value
        observation: Observation vector of the next state
        reward: Raw reward of the transition (any real)
        dead: True if the next state lies in the excluded region
        terminal: True if the next state ends the episode while alive (goal)
    """

    next_state: Any
    observation: tuple[float, ...]
    reward: float
    dead: bool
    terminal: bool = False


@dataclass(frozen=True)
class EnvironmentDescriptor:
    """Static description of an environment.

    Attributes:
        name: Registry name
        action_space: Action space of the environment
        observation_dim: Length of every observation vector
        max_episode_steps: Episode length limit in environment steps
    """

    name: str
    action_space: ActionSpace
    observation_dim: int
    max_episode_steps: int

    def __post_init__(self):
        if not self.name:
            raise ValueError("name cannot be empty")
        if self.observation_dim < 1:
            raise ValueError(f"observation_dim must be ≥ 1, got {self.observation_dim}")
        if self.max_episode_steps < 1:
            raise ValueError(
                f"max_episode_steps must be positive, got {self.max_episode_steps}"
            )

    def to_dict(self) -> dict:
        """Export to a JSON-serializable dict (snake_case keys)."""
        return {
            "name": self.name,
            "action_space": self.action_space.to_dict(),
            "observation_dim": self.observation_dim,
            "max_episode_steps": self.max_episode_steps,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EnvironmentDescriptor":
        """Rebuild from `to_dict` output."""
        return cls(
            name=data["name"],
            action_space=ActionSpace.from_dict(data["action_space"]),
            observation_dim=int(data["observation_dim"]),
            max_episode_steps=int(data["max_episode_steps"]),
        )
