"""Unit tests for the built-in environments."""

import math

import numpy as np
import pytest

from src.environments import ENVIRONMENTS, make_environment
from src.environments.chain_trap import LEFT, RIGHT, ChainState, ChainTrap
from src.environments.point_navigator import PointNavigator, PointState, distance_to_goal
from src.environments.trap_gridworld import (
    DOWN,
    RIGHT as GRID_RIGHT,
    STAY,
    UP,
    GridState,
    TrapGridworld,
    is_trap,
)
from src.planning.exceptions import ContractViolationError


class TestRegistry:
    """Tests for the environment registry."""

    def test_known_names(self):
        """Test every built-in is registered."""
        assert set(ENVIRONMENTS) == {"chain_trap", "trap_gridworld", "point_navigator"}

    def test_make_environment(self):
        """Test instantiation by name."""
        env = make_environment("chain_trap")

        assert isinstance(env, ChainTrap)
        assert env.name == "chain_trap"

    def test_unknown_name(self):
        """Test unknown names list the known ones."""
        with pytest.raises(KeyError, match="known: chain_trap"):
            make_environment("pong")


class TestChainTrap:
    """Tests for ChainTrap."""

    @pytest.fixture
    def env(self):
        return ChainTrap()

    def test_reset(self, env):
        """Test the episode starts next to the trap."""
        state, observation = env.reset(0)

        assert state == ChainState(1)
        assert observation == (1.0,)

    def test_step_right(self, env):
        """Test a plain move."""
        outcome = env.step(ChainState(3), RIGHT)

        assert outcome.next_state == ChainState(4)
        assert outcome.observation == (4.0,)
        assert outcome.reward == 0.0
        assert not outcome.dead

    def test_trap_is_dead(self, env):
        """Test stepping onto position 0 kills."""
        outcome = env.step(ChainState(1), LEFT)

        assert outcome.dead
        assert outcome.reward == 0.0

    def test_goal_is_terminal(self, env):
        """Test reaching position 6 pays 10 and ends the episode."""
        outcome = env.step(ChainState(5), RIGHT)

        assert outcome.terminal
        assert not outcome.dead
        assert outcome.reward == 10.0

    def test_absorbing_states(self, env):
        """Test dead and terminal states do not move or pay."""
        for state in (ChainState(0, dead=True), ChainState(6, terminal=True)):
            for action in (LEFT, RIGHT):
                outcome = env.step(state, action)

                assert outcome.next_state == state
                assert outcome.reward == 0.0
                assert outcome.dead == state.dead
                assert outcome.terminal == state.terminal

    def test_invalid_action(self, env):
        """Test actions outside the space are contract violations."""
        with pytest.raises(ContractViolationError):
            env.step(ChainState(3), 2)


class TestTrapGridworld:
    """Tests for TrapGridworld."""

    @pytest.fixture
    def env(self):
        return TrapGridworld()

    def test_reset(self, env):
        """Test the fixed start cell."""
        state, observation = env.reset(7)

        assert (state.x, state.y) == (0, 2)
        assert observation == (0.0, 2.0)

    def test_episode_cap(self, env):
        """Test episodes allow time to explore before the sparse goal is found."""
        assert env.descriptor.max_episode_steps == 200

    def test_trap_region(self):
        """Test the excluded rectangle bounds."""
        assert is_trap(2, 0)
        assert is_trap(6, 4)
        assert not is_trap(1, 2)
        assert not is_trap(2, 5)
        assert not is_trap(7, 0)

    def test_entering_trap(self, env):
        """Test stepping into an excluded cell kills in that cell."""
        outcome = env.step(GridState(1, 2), GRID_RIGHT)

        assert outcome.dead
        assert outcome.observation == (2.0, 2.0)
        assert outcome.reward == 0.0

    def test_goal(self, env):
        """Test the goal pays 10 and is terminal."""
        outcome = env.step(GridState(8, 5), UP)

        assert outcome.terminal
        assert outcome.reward == 10.0

    def test_off_grid_stays(self, env):
        """Test moves off the grid leave the agent in place."""
        outcome = env.step(GridState(0, 0), DOWN)

        assert outcome.next_state == GridState(0, 0)

    def test_stay(self, env):
        """Test STAY keeps the cell."""
        assert env.step(GridState(0, 2), STAY).next_state == GridState(0, 2)

    def test_state_at_rejects_trap(self, env):
        """Test planning roots cannot be placed inside the trap."""
        with pytest.raises(ValueError, match="excluded"):
            env.state_at(3, 3)


class TestPointNavigator:
    """Tests for PointNavigator."""

    @pytest.fixture
    def env(self):
        return PointNavigator()

    def test_reset(self, env):
        """Test the start at the origin."""
        state, observation = env.reset(1)

        assert observation == (0.0, 0.0)
        assert (state.vx, state.vy) == (0.0, 0.0)

    def test_dynamics(self, env):
        """Test one step of semi-implicit Euler."""
        state, _ = env.reset(0)
        outcome = env.step(state, (0.5, -0.25))

        assert outcome.observation == pytest.approx((0.05, -0.025))
        assert outcome.reward == pytest.approx(-distance_to_goal(0.05, -0.025))
        assert not outcome.dead

    def test_velocity_clipped(self, env):
        """Test speed per axis is bounded by 1."""
        outcome = env.step(PointState(0.0, 0.0, 0.9, 0.0), (1.0, 0.0))

        assert outcome.next_state.vx == 1.0
        assert outcome.observation[0] == pytest.approx(0.1)

    def test_obstacle_kills(self, env):
        """Test entering the disc is death."""
        outcome = env.step(PointState(0.75, 0.1, 0.0, 0.0), (0.5, 0.0))

        assert outcome.dead

    def test_obstacle_favors_passing_below(self, env):
        """Test the disc blocks y = 0, with a short way below and a long way above."""
        assert env.step(PointState(0.9, 0.0, 1.0, 0.0), (0.0, 0.0)).dead
        assert not env.step(PointState(0.9, -0.1, 1.0, 0.0), (0.0, 0.0)).dead
        assert env.step(PointState(0.9, 0.4, 1.0, 0.0), (0.0, 0.0)).dead
        assert not env.step(PointState(0.9, 0.5, 1.0, 0.0), (0.0, 0.0)).dead

    def test_goal_bonus(self, env):
        """Test arrival pays the bonus and is terminal."""
        outcome = env.step(PointState(1.7, 0.0, 1.0, 0.0), (0.0, 0.0))

        assert outcome.terminal
        assert outcome.reward == pytest.approx(100.0 - distance_to_goal(1.8, 0.0))

    def test_action_out_of_box(self, env):
        """Test actions outside [-1, 1]^2 are rejected."""
        with pytest.raises(ContractViolationError):
            env.step(PointState(0.0, 0.0), (2.0, 0.0))


class TestDeterminism:
    """Stepping is a pure function of (state, action)."""

    @pytest.mark.parametrize("name", sorted(ENVIRONMENTS))
    def test_repeated_steps_identical(self, name):
        """Test 1000 random (state, action) pairs step identically twice."""
        env = make_environment(name)
        rng = np.random.default_rng(42)
        state, _ = env.reset(0)
        states = [state]

        for _ in range(1000):
            state = states[int(rng.integers(len(states)))]
            action = env.action_space.sample(rng)
            first = env.step(state, action)
            second = env.step(state, action)

            assert first == second
            if not (first.dead or first.terminal):
                states.append(first.next_state)

    @pytest.mark.parametrize("name", sorted(ENVIRONMENTS))
    def test_step_batch_matches_step(self, name):
        """Test step_batch returns step outcomes in input order."""
        env = make_environment(name)
        rng = np.random.default_rng(3)
        state, _ = env.reset(0)
        pairs = [(state, env.action_space.sample(rng)) for _ in range(10)]

        assert env.step_batch(pairs) == [env.step(s, a) for s, a in pairs]


def test_distance_to_goal():
    """Test distance helper against the goal at (2, 0)."""
    assert distance_to_goal(0.0, 0.0) == 2.0
    assert distance_to_goal(2.0, 1.0) == pytest.approx(math.sqrt(1.0))
