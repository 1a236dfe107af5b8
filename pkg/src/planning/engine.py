"""Fractal Monte Carlo planning loop and episode runner."""

import logging
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from ..environments.base import Environment
from ..models.action_space import Action
from ..models.decision import Decision, SwarmSnapshot
from ..models.distribution import Distribution
from ..models.planner_params import FmcParams
from .exceptions import ContractViolationError
from .swarm import Swarm, choose, evaluate, init_swarm, perturb, recycle

logger = logging.getLogger(__name__)

# Upper bound (exclusive) of per-decision seeds drawn from an episode seed
SEED_BOUND = 2**31 - 1


@dataclass(frozen=True)
class TrajectoryStep:
    """One true environment step of an episode.

    Attributes:
        observation: Observation the action was taken from
        action: Action applied
        reward: Reward received
    """

    observation: tuple[float, ...]
    action: Action
    reward: float


@dataclass
class EpisodeResult:
    """Result of running a planner through one episode.

    Attributes:
        total_score: Sum of rewards collected
        steps: True environment steps taken
        samples_per_step: Planning samples per decision
        trajectory: Every true step taken
        decisions: Every decision made
        reached_goal: True if the episode ended in a terminal state
        died: True if the episode ended in a dead state
    """

    total_score: float
    steps: int
    samples_per_step: float
    trajectory: list[TrajectoryStep] = field(default_factory=list)
    decisions: list[Decision] = field(default_factory=list)
    reached_goal: bool = False
    died: bool = False


class FmcEngine:
    """Plan with a swarm of walkers over any clonable environment."""

    def plan_step(
        self,
        env: Environment,
        root_state: Any,
        root_observation,
        params: FmcParams,
    ) -> Decision:
        """Run one planning call from `root_state` and decide an action.

        Iterates perturb → evaluate → recycle until every alive walker meets
        the horizon, the sample budget is spent, or every walker is dead.

        Args:
            env: Environment to plan in
            root_state: State to plan from
            root_observation: Observation of `root_state`
            params: Planning parameters (including the seed)

        Returns:
            Decision with the chosen action, utilities and swarm snapshots

        Raises:
            ParameterError: If the parameters are invalid
        """
        swarm = init_swarm(root_state, root_observation, params)
        snapshots = []

        try:
            while True:
                perturb(swarm, env)
                if swarm.n_alive == 0:
                    break

                virtual_rewards = evaluate(swarm)
                recycle(swarm, virtual_rewards)
                snapshots.append(self._snapshot(swarm, len(snapshots), virtual_rewards))

                if swarm.horizon_reached() or swarm.samples_used >= params.max_samples:
                    break
        finally:
            env.end_planning(keep=[root_state])

        decision = choose(swarm, env.action_space)
        if not snapshots and swarm.n_alive == 0:
            decision = self._random_decision(swarm, env, decision)

        decision = replace(decision, iterations=tuple(snapshots))
        logger.debug(
            f"plan_step: {len(snapshots)} iterations, {swarm.samples_used} samples, "
            f"{swarm.n_alive}/{len(swarm)} alive, action={decision.action}, "
            f"divergence={decision.divergence:.4f}"
        )
        return decision

    def run_episode(
        self,
        env: Environment,
        params: FmcParams,
        max_steps: int,
        seed: int,
    ) -> EpisodeResult:
        """Play one episode, planning before every decision tick.

        Each decision is applied for dt true environment steps. Per-decision
        planning seeds are drawn from a stream seeded with `seed`.

        Args:
            env: Environment to play
            params: Planning parameters (the seed field is overridden per decision)
            max_steps: Limit on true environment steps
            seed: Episode seed (environment reset and planning seeds)

        Returns:
            EpisodeResult with score, steps and samples per decision

        Raises:
            ContractViolationError: If max_steps < 1
        """
        if max_steps < 1:
            raise ContractViolationError(f"max_steps must be ≥ 1, got {max_steps}")

        state, observation = env.reset(seed)
        seeds = np.random.default_rng(seed)
        result = EpisodeResult(total_score=0.0, steps=0, samples_per_step=0.0)
        total_samples = 0

        while result.steps < max_steps and not (result.reached_goal or result.died):
            plan_params = replace(params, seed=int(seeds.integers(SEED_BOUND)))
            decision = self.plan_step(env, state, observation, plan_params)
            result.decisions.append(decision)
            total_samples += decision.samples_used

            for _ in range(params.repeat):
                outcome = env.step(state, decision.action)
                result.trajectory.append(
                    TrajectoryStep(tuple(observation), decision.action, outcome.reward)
                )
                result.total_score += outcome.reward
                result.steps += 1
                state, observation = outcome.next_state, outcome.observation

                result.died = outcome.dead
                result.reached_goal = outcome.terminal
                if outcome.dead or outcome.terminal or result.steps >= max_steps:
                    break

        env.end_planning(keep=[state])
        result.samples_per_step = total_samples / len(result.decisions)
        return result

    def _snapshot(
        self, swarm: Swarm, iteration: int, virtual_rewards: np.ndarray
    ) -> SwarmSnapshot:
        return SwarmSnapshot(
            iteration=iteration,
            samples_used=swarm.samples_used,
            alive=swarm.n_alive,
            depths=swarm.depths(),
            virtual_rewards=tuple(float(v) for v in virtual_rewards),
        )

    def _random_decision(
        self, swarm: Swarm, env: Environment, counted: Decision
    ) -> Decision:
        """Uniform random fallback when the swarm died before any recycling."""
        logger.warning("Every walker died in the first sweep; acting at random")
        action = env.action_space.sample(swarm.rng)
        uniform = Distribution.uniform(len(counted.actions))
        return replace(
            counted,
            action=action,
            utilities=uniform,
            divergence=0.0,
            reward_divergence=0.0,
            fallback=True,
        )
