"""ChainTrap: a seven-cell line with a trap at one end and a goal at the other."""

from dataclasses import dataclass

from ..models.action_space import ActionSpace
from ..models.environment import EnvironmentDescriptor, StepOutcome
from ..planning.exceptions import ContractViolationError
from .base import Environment

LEFT = 0
RIGHT = 1

TRAP_POSITION = 0
START_POSITION = 1
GOAL_POSITION = 6
GOAL_REWARD = 10.0


@dataclass(frozen=True)
class ChainState:
    """Position on the chain plus absorbing flags."""

    position: int
    dead: bool = False
    terminal: bool = False


class ChainTrap(Environment):
    """Positions 0..6 on a line; 0 is dead, 6 pays the goal reward and ends.

    Small enough for exhaustive enumeration (2^8 sequences at horizon 8).
    """

    _descriptor = EnvironmentDescriptor(
        name="chain_trap",
        action_space=ActionSpace.discrete(2, labels=("LEFT", "RIGHT")),
        observation_dim=1,
        max_episode_steps=20,
    )

    @property
    def descriptor(self) -> EnvironmentDescriptor:
        return self._descriptor

    def reset(self, seed: int) -> tuple[ChainState, tuple[float, ...]]:
        state = ChainState(position=START_POSITION)
        return state, self.observe(state)

    def observe(self, state: ChainState) -> tuple[float, ...]:
        return (float(state.position),)

    def step(self, state: ChainState, action) -> StepOutcome:
        if not self.action_space.contains(action):
            raise ContractViolationError(f"ChainTrap action must be 0 or 1, got {action!r}")

        if state.dead or state.terminal:
            return StepOutcome(state, self.observe(state), 0.0, state.dead, state.terminal)

        move = 1 if int(action) == RIGHT else -1
        position = min(max(state.position + move, TRAP_POSITION), GOAL_POSITION)

        dead = position == TRAP_POSITION
        terminal = position == GOAL_POSITION
        reward = GOAL_REWARD if terminal else 0.0

        next_state = ChainState(position=position, dead=dead, terminal=terminal)
        return StepOutcome(next_state, self.observe(next_state), reward, dead, terminal)
