"""Contract: FMC crosses TrapGridworld without entering the excluded region."""

import warnings

import pytest

from src.bench.agents import FmcAgent, RandomAgent
from src.environments.trap_gridworld import TrapGridworld, is_trap
from src.models.planner_params import FmcParams

pytestmark = pytest.mark.slow

SEEDS = range(50)


def visited_trap(result) -> bool:
    return any(is_trap(*(int(v) for v in step.observation)) for step in result.trajectory)


class TestDeathAvoidance:
    """Goal-reach rates of FMC and the random baseline."""

    def test_fmc_reaches_goal_alive(self):
        """Test FMC with the default swarm solves ≥ 48 of 50 episodes."""
        agent = FmcAgent(FmcParams(n_walkers=30, time_horizon=15, dt=1, max_samples=300))
        env = TrapGridworld()

        solved = 0
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            for seed in SEEDS:
                result = agent.play(env, seed, max_steps=env.descriptor.max_episode_steps)
                solved += result.reached_goal and not result.died and not visited_trap(result)

        assert solved >= 48

    def test_random_rarely_reaches_goal(self):
        """Test uniform random play reaches the goal in < 5 of 50 episodes."""
        env = TrapGridworld()

        reached = sum(
            RandomAgent().play(env, seed, max_steps=env.descriptor.max_episode_steps).reached_goal
            for seed in SEEDS
        )

        assert reached < 5
