"""Agents the bench can run: FMC, UCT, uniform random and the exhaustive oracle."""

import logging
from abc import ABC, abstractmethod
from dataclasses import replace
from typing import Any, Optional

import numpy as np

from ..environments.base import Environment
from ..models.action_space import Action
from ..models.decision import Decision
from ..models.planner_params import FmcParams, UctParams
from ..planning.engine import SEED_BOUND, EpisodeResult, FmcEngine, TrajectoryStep
from ..planning.exceptions import ContractViolationError, SizeLimitError, UnsupportedSpaceError
from ..planning.oracle import MAX_SEQUENCES, exhaustive_values, oracle_best_action
from ..planning.uct import uct_decide
from .config import RunConfig
from .exceptions import ConfigError

logger = logging.getLogger(__name__)


class Agent(ABC):
    """Plays whole episodes in an environment."""

    name: str = ""

    @abstractmethod
    def play(self, env: Environment, seed: int, max_steps: int) -> EpisodeResult:
        """Play one seeded episode of at most `max_steps` environment steps."""
        pass

    def check(self, env: Environment) -> None:
        """Raise ConfigError if this agent cannot act in `env`."""
        pass


class StepwiseAgent(Agent):
    """Agent deciding one environment step at a time."""

    @abstractmethod
    def decide(
        self, env: Environment, state: Any, observation, seed: int
    ) -> tuple[Action, int, Optional[Decision]]:
        """Pick an action.

        Returns:
            Tuple of (action, environment steps spent deciding, decision or None)
        """
        pass

    def play(self, env: Environment, seed: int, max_steps: int) -> EpisodeResult:
        if max_steps < 1:
            raise ContractViolationError(f"max_steps must be ≥ 1, got {max_steps}")

        state, observation = env.reset(seed)
        seeds = np.random.default_rng(seed)
        result = EpisodeResult(total_score=0.0, steps=0, samples_per_step=0.0)
        total_samples = 0

        while result.steps < max_steps and not (result.reached_goal or result.died):
            action, samples, decision = self.decide(
                env, state, observation, int(seeds.integers(SEED_BOUND))
            )
            total_samples += samples
            if decision is not None:
                result.decisions.append(decision)

            outcome = env.step(state, action)
            result.trajectory.append(TrajectoryStep(tuple(observation), action, outcome.reward))
            result.total_score += outcome.reward
            result.steps += 1
            state, observation = outcome.next_state, outcome.observation
            result.died = outcome.dead
            result.reached_goal = outcome.terminal

        env.end_planning(keep=[state])
        result.samples_per_step = total_samples / result.steps
        return result


class FmcAgent(Agent):
    name = "fmc"

    def __init__(self, params: FmcParams):
        self.params = params
        self.engine = FmcEngine()

    def play(self, env: Environment, seed: int, max_steps: int) -> EpisodeResult:
        return self.engine.run_episode(env, replace(self.params, seed=seed), max_steps, seed)


class UctAgent(StepwiseAgent):
    name = "uct"

    def __init__(self, params: UctParams):
        self.params = params

    def check(self, env: Environment) -> None:
        if not env.action_space.is_discrete:
            raise ConfigError(f"uct does not support the continuous action space of {env.name}")

    def decide(self, env, state, observation, seed):
        try:
            decision = uct_decide(env, state, replace(self.params, seed=seed))
        except UnsupportedSpaceError as e:
            raise ConfigError(str(e)) from e
        return decision.action, decision.samples_used, decision


class RandomAgent(StepwiseAgent):
    """Uniform random actions; spends no planning samples."""

    name = "random"

    def decide(self, env, state, observation, seed):
        return env.action_space.sample(np.random.default_rng(seed)), 0, None


class OracleAgent(StepwiseAgent):
    """Exhaustive lookahead of a fixed horizon before every step."""

    name = "oracle"

    def __init__(self, horizon: int):
        self.horizon = horizon

    def check(self, env: Environment) -> None:
        if not env.action_space.is_discrete:
            raise ConfigError(f"oracle does not support the continuous action space of {env.name}")
        if env.action_space.n ** max(self.horizon, 1) > MAX_SEQUENCES:
            raise ConfigError(
                f"oracle horizon {self.horizon} is too large for {env.action_space.n} actions"
            )

    def decide(self, env, state, observation, seed):
        try:
            action, samples = self._shallowest_optimal(env, state)
        except (UnsupportedSpaceError, SizeLimitError) as e:
            raise ConfigError(str(e)) from e
        finally:
            env.end_planning(keep=[state])
        return action, samples, None

    def _shallowest_optimal(self, env: Environment, state: Any) -> tuple[int, int]:
        """Optimal action that attains the optimal return at the smallest depth.

        Plain lowest-index tie breaking can pick an action that only delays
        the goal, and replanning every step would then never reach it.
        """
        full = exhaustive_values(env, state, self.horizon)
        # Every node below the root cost one environment step
        samples = full.nodes - 1
        target = full[oracle_best_action(full)]

        for depth in range(1, full.horizon):
            table = exhaustive_values(env, state, depth)
            samples += table.nodes - 1
            for entry in table.entries:
                optimal = full[entry.action]
                if (
                    entry.optimal_return >= target.optimal_return
                    and optimal.optimal_return >= target.optimal_return
                    and (optimal.reachable_alive or not target.reachable_alive)
                ):
                    return entry.action, samples
        return target.action, samples


def make_agent(config: RunConfig) -> Agent:
    """Build the agent a run configuration names."""
    if config.agent == "fmc":
        return FmcAgent(config.fmc.to_params())
    if config.agent == "uct":
        return UctAgent(config.uct.to_params())
    if config.agent == "random":
        return RandomAgent()
    if config.agent == "oracle":
        return OracleAgent(config.oracle.horizon)
    raise ConfigError(f"Unknown agent {config.agent!r}")
