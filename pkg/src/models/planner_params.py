"""Parameter models for the FMC and UCT planners."""

import math
import warnings
from dataclasses import dataclass


@dataclass
class FmcParams:
    """Configuration of a Fractal Monte Carlo planning call.

    Attributes:
        n_walkers: Number of walkers, the maximum number of simulated paths
        time_horizon: How far ahead (in environment steps) walkers look
        dt: Environment steps each sampled action is repeated for
        max_samples: Environment steps after which no new sweep starts
        seed: Seed of the planner's random stream
    """

    n_walkers: int = 30
    time_horizon: float = 15
    dt: float = 5
    max_samples: int = 300
    seed: int = 0

    def validate(self) -> None:
        """Validate parameters.

        Raises:
            ValueError: If validation fails
        """
        if self.n_walkers < 1:
            raise ValueError(f"n_walkers must be positive, got {self.n_walkers}")

        if self.time_horizon <= 0:
            raise ValueError(f"time_horizon must be positive, got {self.time_horizon}")

        # Environment steps are discrete, so each tick repeats an integer count
        if self.dt <= 0 or not float(self.dt).is_integer():
            raise ValueError(f"dt must be a positive whole number of steps, got {self.dt}")

        if self.time_horizon / self.dt < 1:
            raise ValueError(
                f"time_horizon / dt must be ≥ 1, got {self.time_horizon}/{self.dt}"
            )

        if self.max_samples < self.n_walkers:
            raise ValueError(
                f"max_samples ({self.max_samples}) must be ≥ n_walkers ({self.n_walkers})"
            )

        if self.max_samples < self.n_walkers * self.horizon_steps:
            warnings.warn(
                f"max_samples={self.max_samples} cannot carry {self.n_walkers} walkers "
                f"to the horizon ({self.horizon_steps} steps); planning is budget-bound"
            )

    @property
    def repeat(self) -> int:
        """Environment steps per decision tick."""
        return int(self.dt)

    @property
    def horizon_ticks(self) -> int:
        """Decision ticks needed to reach the time horizon."""
        return math.ceil(self.time_horizon / self.dt)

    @property
    def horizon_steps(self) -> int:
        """Walker depth (environment steps) at which the horizon is met."""
        return self.horizon_ticks * self.repeat

    def recommended_max_samples(self) -> int:
        """Budget guidance: walkers × time horizon × repeat actions."""
        return int(self.n_walkers * self.time_horizon * self.dt)


@dataclass
class UctParams:
    """Configuration of a UCT planning call.

    Attributes:
        exploration_c: UCB1 exploration constant
        rollout_horizon: Depth (from the root) at which rollouts stop
        budget_samples: Environment steps allowed per planning call
        seed: Seed of the planner's random stream
    """

    exploration_c: float = math.sqrt(2)
    rollout_horizon: int = 15
    budget_samples: int = 300
    seed: int = 0

    def validate(self) -> None:
        """Validate parameters.

        Raises:
            ValueError: If validation fails
        """
        if self.exploration_c < 0:
            raise ValueError(f"exploration_c must be ≥ 0, got {self.exploration_c}")

        if self.rollout_horizon < 1:
            raise ValueError(
                f"rollout_horizon must be positive, got {self.rollout_horizon}"
            )

        if self.budget_samples < 1:
            raise ValueError(f"budget_samples must be ≥ 1, got {self.budget_samples}")
