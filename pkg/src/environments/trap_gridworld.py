"""TrapGridworld: a 9x9 grid with an excluded rectangle between start and goal."""

from dataclasses import dataclass

from ..models.action_space import ActionSpace
from ..models.environment import EnvironmentDescriptor, StepOutcome
from ..planning.exceptions import ContractViolationError
from .base import Environment

UP, DOWN, LEFT, RIGHT, STAY = range(5)

MOVES = {
    UP: (0, 1),
    DOWN: (0, -1),
    LEFT: (-1, 0),
    RIGHT: (1, 0),
    STAY: (0, 0),
}

GRID_SIZE = 9
START = (0, 2)
GOAL = (8, 6)
GOAL_REWARD = 10.0

# Excluded region, inclusive bounds
TRAP_X = (2, 6)
TRAP_Y = (0, 4)


def is_trap(x: int, y: int) -> bool:
    """True if cell (x, y) lies in the excluded rectangle."""
    return TRAP_X[0] <= x <= TRAP_X[1] and TRAP_Y[0] <= y <= TRAP_Y[1]


@dataclass(frozen=True)
class GridState:
    """Cell coordinates plus absorbing flags."""

    x: int
    y: int
    dead: bool = False
    terminal: bool = False


class TrapGridworld(Environment):
    """Reach the goal without entering the excluded rectangle.

    Stepping into an excluded cell kills the agent in that cell. Moves off
    the grid leave the agent in place. Every step pays 0 except the one that
    reaches the goal.
    """

    _descriptor = EnvironmentDescriptor(
        name="trap_gridworld",
        action_space=ActionSpace.discrete(
            5, labels=("UP", "DOWN", "LEFT", "RIGHT", "STAY")
        ),
        observation_dim=2,
        max_episode_steps=200,
    )

    @property
    def descriptor(self) -> EnvironmentDescriptor:
        return self._descriptor

    def reset(self, seed: int) -> tuple[GridState, tuple[float, ...]]:
        state = GridState(*START)
        return state, self.observe(state)

    def observe(self, state: GridState) -> tuple[float, ...]:
        return (float(state.x), float(state.y))

    def state_at(self, x: int, y: int) -> GridState:
        """Alive state at cell (x, y), for planning from arbitrary cells."""
        if is_trap(x, y):
            raise ValueError(f"Cell ({x}, {y}) is inside the excluded region")
        return GridState(x, y, terminal=(x, y) == GOAL)

    def step(self, state: GridState, action) -> StepOutcome:
        if not self.action_space.contains(action):
            raise ContractViolationError(f"TrapGridworld action must be 0..4, got {action!r}")

        if state.dead or state.terminal:
            return StepOutcome(state, self.observe(state), 0.0, state.dead, state.terminal)

        dx, dy = MOVES[int(action)]
        x = min(max(state.x + dx, 0), GRID_SIZE - 1)
        y = min(max(state.y + dy, 0), GRID_SIZE - 1)

        dead = is_trap(x, y)
        terminal = (x, y) == GOAL
        reward = GOAL_REWARD if terminal else 0.0

        next_state = GridState(x, y, dead=dead, terminal=terminal)
        return StepOutcome(next_state, self.observe(next_state), reward, dead, terminal)
