"""PointNavigator: a 2D point mass steering around a dead disc to a goal."""

import math
from dataclasses import dataclass

from ..models.action_space import ActionSpace
from ..models.environment import EnvironmentDescriptor, StepOutcome
from ..planning.exceptions import ContractViolationError
from .base import Environment

DT = 0.1
MAX_SPEED = 1.0

GOAL = (2.0, 0.0)
GOAL_RADIUS = 0.25
GOAL_BONUS = 100.0

# Blocks the straight line to the goal; the way below is far shorter than the way above
OBSTACLE_CENTER = (1.0, 0.2)
OBSTACLE_RADIUS = 0.25


@dataclass(frozen=True)
class PointState:
    """Position, velocity and absorbing flags of the point mass."""

    x: float
    y: float
    vx: float = 0.0
    vy: float = 0.0
    dead: bool = False
    terminal: bool = False


def distance_to_goal(x: float, y: float) -> float:
    return math.hypot(x - GOAL[0], y - GOAL[1])


class PointNavigator(Environment):
    """Continuous control: acceleration in [-1, 1]^2, semi-implicit Euler.

    Dynamics per step: v' = clip(v + a, -1, 1), p' = p + DT * v'.
    Reward is the negative distance to the goal, plus GOAL_BONUS on the step
    that enters the goal radius. Entering the obstacle disc is death.
    """

    _descriptor = EnvironmentDescriptor(
        name="point_navigator",
        action_space=ActionSpace.continuous((-1.0, -1.0), (1.0, 1.0)),
        observation_dim=2,
        max_episode_steps=300,
    )

    @property
    def descriptor(self) -> EnvironmentDescriptor:
        return self._descriptor

    def reset(self, seed: int) -> tuple[PointState, tuple[float, ...]]:
        state = PointState(0.0, 0.0)
        return state, self.observe(state)

    def observe(self, state: PointState) -> tuple[float, ...]:
        return (state.x, state.y)

    def step(self, state: PointState, action) -> StepOutcome:
        if not self.action_space.contains(action):
            raise ContractViolationError(
                f"PointNavigator action must lie in [-1, 1]^2, got {action!r}"
            )

        if state.dead or state.terminal:
            return StepOutcome(state, self.observe(state), 0.0, state.dead, state.terminal)

        ax, ay = (float(v) for v in action)
        vx = min(max(state.vx + ax, -MAX_SPEED), MAX_SPEED)
        vy = min(max(state.vy + ay, -MAX_SPEED), MAX_SPEED)
        x = state.x + DT * vx
        y = state.y + DT * vy

        distance = distance_to_goal(x, y)
        dead = math.hypot(x - OBSTACLE_CENTER[0], y - OBSTACLE_CENTER[1]) < OBSTACLE_RADIUS
        terminal = not dead and distance <= GOAL_RADIUS

        reward = -distance
        if terminal:
            reward += GOAL_BONUS

        next_state = PointState(x, y, vx, vy, dead=dead, terminal=terminal)
        return StepOutcome(next_state, self.observe(next_state), reward, dead, terminal)
