"""Planner decision and swarm trace models."""

from dataclasses import dataclass, field

from .action_space import Action
from .distribution import Distribution


def _action_to_json(action: Action):
    return action if isinstance(action, int) else list(action)


@dataclass(frozen=True)
class SwarmSnapshot:
    """State of the swarm after one engine iteration.

    Attributes:
        iteration: Zero-based iteration index
        samples_used: Environment steps consumed so far
        alive: Number of alive walkers after recycling
        depths: Walker depths after recycling
        virtual_rewards: Virtual rewards the iteration's recycling used
    """

    iteration: int
    samples_used: int
    alive: int
    depths: tuple[int, ...]
    virtual_rewards: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "samples_used": self.samples_used,
            "alive": self.alive,
            "depths": list(self.depths),
            "virtual_rewards": list(self.virtual_rewards),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SwarmSnapshot":
        return cls(
            iteration=data["iteration"],
            samples_used=data["samples_used"],
            alive=data["alive"],
            depths=tuple(data["depths"]),
            virtual_rewards=tuple(data["virtual_rewards"]),
        )


@dataclass(frozen=True)
class Decision:
    """Outcome of one planning call.

    Attributes:
        action: Action to apply in the true environment
        actions: Root actions the utilities and counts refer to
        utilities: Deciding policy over `actions`
        samples_used: Environment steps consumed by the planning call
        walker_counts: Walkers (alive or dead) per root action
        alive_counts: Alive walkers per root action
        divergence: Divergence of the utilities from the uniform policy
        reward_divergence: Divergence of the utilities from the reward density
        iterations: Per-iteration swarm snapshots
        fallback: True if no information survived and the action is random
    """

    action: Action
    actions: tuple[Action, ...]
    utilities: Distribution
    samples_used: int
    walker_counts: tuple[int, ...]
    alive_counts: tuple[int, ...] = ()
    divergence: float = 0.0
    reward_divergence: float = 0.0
    iterations: tuple[SwarmSnapshot, ...] = field(default=())
    fallback: bool = False

    def utility_of(self, action: Action) -> float:
        """Utility assigned to `action` (0 if no walker took it)."""
        for candidate, weight in zip(self.actions, self.utilities.weights):
            if candidate == action:
                return weight
        return 0.0

    def to_dict(self) -> dict:
        """Export to a JSON-serializable dict (without iteration snapshots)."""
        return {
            "action": _action_to_json(self.action),
            "actions": [_action_to_json(a) for a in self.actions],
            "utilities": list(self.utilities.weights),
            "samples_used": self.samples_used,
            "walker_counts": list(self.walker_counts),
            "alive_counts": list(self.alive_counts),
            "divergence": self.divergence,
            "reward_divergence": self.reward_divergence,
            "fallback": self.fallback,
        }
