"""Unit tests for walker and swarm operations."""

import numpy as np
import pytest

from src.environments.chain_trap import LEFT, RIGHT, ChainState, ChainTrap
from src.models.action_space import ActionSpace
from src.models.planner_params import FmcParams
from src.planning.exceptions import (
    AllWalkersDeadError,
    ContractViolationError,
    ParameterError,
)
from src.planning.swarm import (
    Swarm,
    Walker,
    choose,
    clone_probabilities,
    clone_probability,
    evaluate,
    init_swarm,
    perturb,
    recycle,
)
from tests.fixtures.environments import OpenLine


class FixedRng:
    """Stand-in generator returning preset companions and draws."""

    def __init__(self, companions, draws):
        self.companions = np.asarray(companions)
        self.draws = np.asarray(draws, dtype=float)

    def integers(self, low, high=None, size=None):
        return self.companions

    def random(self, size=None):
        return self.draws


def make_swarm(root_actions, alive=None, cum_rewards=None, observations=None):
    """Swarm of walkers that already took the given root actions."""
    n = len(root_actions)
    alive = alive or [True] * n
    cum_rewards = cum_rewards or [0.0] * n
    observations = observations or [(0.0,)] * n
    walkers = [
        Walker(
            id=i,
            state=i,
            observation=tuple(observations[i]),
            cum_reward=cum_rewards[i],
            alive=alive[i],
            root_action=root_actions[i],
            depth=1,
        )
        for i in range(n)
    ]
    params = FmcParams(n_walkers=n, time_horizon=4, dt=1, max_samples=4 * n)
    return Swarm(walkers=walkers, params=params, rng=np.random.default_rng(0))


class TestInitSwarm:
    """Tests for init_swarm."""

    def test_walkers_at_root(self):
        """Test every walker starts alive at the root."""
        swarm = init_swarm(ChainState(1), (1.0,), FmcParams(n_walkers=3, time_horizon=6, dt=1, max_samples=18))

        assert len(swarm) == 3
        assert swarm.n_alive == 3
        assert all(w.state == ChainState(1) for w in swarm.walkers)
        assert all(w.depth == 0 and w.root_action is None for w in swarm.walkers)
        assert [w.id for w in swarm.walkers] == [0, 1, 2]

    def test_singleton(self):
        """Test a single walker is legal."""
        swarm = init_swarm(ChainState(1), (1.0,), FmcParams(n_walkers=1, time_horizon=1, dt=1, max_samples=1))

        assert len(swarm) == 1

    def test_budget_below_walkers(self):
        """Test invalid parameters raise ParameterError."""
        with pytest.raises(ParameterError, match="max_samples"):
            init_swarm(ChainState(1), (1.0,), FmcParams(n_walkers=30, max_samples=10))


class TestPerturb:
    """Tests for perturb."""

    def test_depth_and_samples(self):
        """Test dt=2 advances a walker two steps."""
        params = FmcParams(n_walkers=1, time_horizon=4, dt=2, max_samples=4)
        swarm = init_swarm(*OpenLine().reset(0), params)

        perturb(swarm, OpenLine())

        walker = swarm.walkers[0]
        assert walker.depth == 2
        assert swarm.samples_used == 2
        assert walker.root_action is not None
        # Repeating action a twice moves by 2a and pays 2a
        assert walker.observation == (2.0 * walker.root_action,)
        assert walker.cum_reward == 2.0 * walker.root_action

    def test_death_stops_repeats(self):
        """Test a walker dying on the first repeat stays at the death step."""
        env = ChainTrap()
        params = FmcParams(n_walkers=20, time_horizon=4, dt=2, max_samples=80)
        swarm = init_swarm(*env.reset(0), params)

        perturb(swarm, env)

        assert {w.root_action for w in swarm.walkers} == {LEFT, RIGHT}
        for walker in swarm.walkers:
            if walker.root_action == LEFT:
                assert not walker.alive
                assert walker.depth == 1
            else:
                assert walker.alive
                assert walker.depth == 2

    def test_full_sweep_cost(self):
        """Test 30 alive walkers with dt=5 spend 150 samples."""
        params = FmcParams(n_walkers=30, time_horizon=10, dt=5, max_samples=300)
        swarm = init_swarm(*OpenLine().reset(0), params)

        perturb(swarm, OpenLine())

        assert swarm.samples_used == 150
        assert swarm.depths() == (5,) * 30

    def test_sweep_finishes_past_budget(self):
        """Test a sweep completes every walker's dt repeats even past max_samples."""
        params = FmcParams(n_walkers=3, time_horizon=10, dt=5, max_samples=7)
        swarm = init_swarm(*OpenLine().reset(0), params)

        with pytest.warns(UserWarning):
            params.validate()
        perturb(swarm, OpenLine())

        assert swarm.depths() == (5, 5, 5)
        assert swarm.samples_used == 15
        assert swarm.samples_used <= params.max_samples + params.n_walkers * params.repeat

    def test_no_walker_below_horizon(self):
        """Test perturbing a swarm at the horizon is a contract violation."""
        swarm = make_swarm([0, 1])
        for walker in swarm.walkers:
            walker.depth = swarm.params.horizon_steps

        with pytest.raises(ContractViolationError):
            perturb(swarm, OpenLine(2))


class TestEvaluate:
    """Tests for evaluate."""

    def test_identical_walkers(self):
        """Test identical alive walkers all score 1."""
        swarm = make_swarm([0, 1])

        np.testing.assert_array_equal(evaluate(swarm), [1.0, 1.0])

    def test_dead_walker_scores_zero(self):
        """Test dead walkers get virtual reward 0."""
        swarm = make_swarm([0, 1, 0], alive=[True, False, True], observations=[(0,), (5,), (1,)])

        scores = evaluate(swarm)

        assert scores[1] == 0.0
        assert np.all(scores[[0, 2]] > 0)

    def test_reward_term(self):
        """Test equal distances leave the relativized rewards."""
        swarm = make_swarm([0, 0, 0], cum_rewards=[0.0, 1.0, 2.0])

        np.testing.assert_allclose(evaluate(swarm), [0.2938, 1.0, 1.7996], atol=1e-3)

    def test_all_dead(self):
        """Test evaluating an all-dead swarm signals AllWalkersDeadError."""
        swarm = make_swarm([0, 1], alive=[False, False])

        with pytest.raises(AllWalkersDeadError):
            evaluate(swarm)


class TestCloneProbability:
    """Tests for clone_probability and its vectorized form."""

    def test_examples(self):
        """Test the clamped relative improvement."""
        assert clone_probability(1.0, 3.0, True, True) == 1.0
        assert clone_probability(2.0, 3.0, True, True) == 0.5
        assert clone_probability(3.0, 1.0, True, True) == 0.0
        assert clone_probability(2.0, 2.0, True, True) == 0.0

    def test_alive_flags(self):
        """Test dead walkers always clone and dead targets never attract."""
        assert clone_probability(0.0, 1.0, False, True) == 1.0
        assert clone_probability(1.0, 5.0, True, False) == 0.0
        assert clone_probability(0.0, 0.0, False, False) == 0.0

    def test_zero_self_score(self):
        """Test the denominator floor keeps the result bounded."""
        assert clone_probability(0.0, 1e-3, True, True) == 1.0

    def test_vectorized_matches_scalar(self):
        """Test clone_probabilities agrees with clone_probability."""
        rng = np.random.default_rng(5)
        vr = rng.uniform(0, 3, size=12)
        alive = rng.random(12) > 0.3
        vr[~alive] = 0.0
        companions = rng.integers(0, 12, size=12)

        probs = clone_probabilities(vr, alive, companions)

        for i in range(12):
            j = companions[i]
            assert probs[i] == pytest.approx(clone_probability(vr[i], vr[j], alive[i], alive[j]))


class TestRecycle:
    """Tests for recycle."""

    def test_identical_swarm_unchanged(self):
        """Test identical alive walkers never clone."""
        swarm = make_swarm([0, 1, 2])
        before = [vars(w).copy() for w in swarm.walkers]

        recycle(swarm, np.ones(3))

        assert [vars(w) for w in swarm.walkers] == before

    def test_dead_walker_copies_companion(self):
        """Test a dead walker lands on its alive companion's leaf."""
        swarm = make_swarm(
            [0, 1], alive=[False, True], cum_rewards=[0.0, 4.0], observations=[(9,), (3,)]
        )

        recycle(swarm, np.array([0.0, 1.0]), rng=FixedRng(companions=[1, 0], draws=[0.5, 0.5]))

        dead, alive = swarm.walkers
        assert dead.alive
        assert dead.id == 0
        assert (dead.state, dead.observation, dead.cum_reward, dead.root_action) == (
            alive.state,
            alive.observation,
            alive.cum_reward,
            alive.root_action,
        )

    def test_clones_use_pre_recycle_swarm(self):
        """Test simultaneous cloning reads the snapshot, not updated walkers."""
        swarm = make_swarm([0, 1, 2], alive=[False, True, True], observations=[(0,), (1,), (2,)])

        # Walker 0 copies walker 1, which itself copies walker 2 in the same pass
        recycle(swarm, np.array([0.0, 1.0, 3.0]), rng=FixedRng([1, 2, 1], [0.1, 0.1, 0.1]))

        assert swarm.walkers[0].alive
        assert swarm.walkers[0].observation == (1,)
        assert swarm.walkers[1].observation == (2,)
        assert swarm.walkers[2].observation == (2,)

    def test_conserves_walkers(self):
        """Test recycling never changes the walker count."""
        swarm = make_swarm([0, 1, 0, 1], alive=[True, False, True, False])

        recycle(swarm, np.array([1.0, 0.0, 2.0, 0.0]))

        assert len(swarm) == 4

    def test_all_dead(self):
        """Test recycling an all-dead swarm signals AllWalkersDeadError."""
        with pytest.raises(AllWalkersDeadError):
            recycle(make_swarm([0], alive=[False]), np.zeros(1))


class TestChoose:
    """Tests for choose."""

    def test_argmax_for_one_hot(self):
        """Test counts [10, 20, 0] pick action 1."""
        swarm = make_swarm([0] * 10 + [1] * 20)

        decision = choose(swarm, ActionSpace.discrete(3))

        assert decision.action == 1
        assert decision.walker_counts == (10, 20, 0)
        assert decision.utilities.weights == pytest.approx((1 / 3, 2 / 3, 0.0))

    def test_tie_breaks_to_lowest(self):
        """Test counts [15, 15] pick action 0."""
        swarm = make_swarm([0] * 15 + [1] * 15)

        assert choose(swarm, ActionSpace.discrete(2)).action == 0

    def test_continuous_weighted_mean(self):
        """Test equal counts of (1, 0) and (0, 1) average to (0.5, 0.5)."""
        swarm = make_swarm([(1.0, 0.0), (0.0, 1.0)])

        decision = choose(swarm, ActionSpace.continuous((-1, -1), (1, 1)))

        assert decision.action == pytest.approx((0.5, 0.5))
        assert decision.actions == ((1.0, 0.0), (0.0, 1.0))

    def test_utilities_count_alive_only(self):
        """Test dead walkers are excluded from the utilities but kept in walker_counts."""
        swarm = make_swarm([0, 0, 0, 1], alive=[False, False, True, True])

        decision = choose(swarm, ActionSpace.discrete(2))

        assert decision.walker_counts == (3, 1)
        assert decision.alive_counts == (1, 1)
        assert decision.utilities.weights == (0.5, 0.5)

    def test_all_dead_counts_every_walker(self):
        """Test an all-dead swarm falls back to all walkers."""
        swarm = make_swarm([0, 1, 1], alive=[False, False, False])

        decision = choose(swarm, ActionSpace.discrete(2))

        assert decision.action == 1
        assert sum(decision.utilities.weights) == pytest.approx(1.0)

    def test_divergence_of_uniform_policy(self):
        """Test a uniform deciding policy has zero divergence from uniform."""
        swarm = make_swarm([0, 1])

        assert choose(swarm, ActionSpace.discrete(2)).divergence == 0.0

    def test_nothing_acted(self):
        """Test choosing before any perturbation is a contract violation."""
        swarm = make_swarm([None, None])

        with pytest.raises(ContractViolationError):
            choose(swarm, ActionSpace.discrete(2))

    def test_custom_embeddings(self):
        """Test nearest-embedding choice with non one-hot embeddings."""
        space = ActionSpace.discrete(embeddings=[[-1.0], [0.0], [1.0]])
        swarm = make_swarm([0] * 5 + [2] * 5)

        # Mean embedding is 0.0, nearest to the middle action
        assert choose(swarm, space).action == 1
