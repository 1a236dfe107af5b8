"""Walkers, the swarm, and the per-iteration Fractal Monte Carlo operations."""

import logging
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from ..environments.base import Environment
from ..models.action_space import Action, ActionSpace
from ..models.decision import Decision
from ..models.distribution import Distribution
from ..models.planner_params import FmcParams
from .exceptions import (
    AllWalkersDeadError,
    ContractViolationError,
    DegenerateSliceError,
    ParameterError,
)
from .stats import entropic_divergence, relativize, reward_density, virtual_reward

logger = logging.getLogger(__name__)

# Floor of the cloning denominator
CLONE_EPSILON = 1e-8

# Distances within this margin count as ties when picking a discrete action
TIE_TOLERANCE = 1e-12


@dataclass
class Walker:
    """One leaf of the search tree.

    Attributes:
        id: Index of the walker in its swarm
        state: Environment state value
        observation: Observation of `state`
        cum_reward: Sum of raw rewards since the root
        alive: False once the walker entered a dead state
        root_action: Action the walker's path took from the root
        depth: Environment steps taken since the root
    """

    id: int
    state: Any
    observation: tuple[float, ...]
    cum_reward: float = 0.0
    alive: bool = True
    root_action: Optional[Action] = None
    depth: int = 0

    def clone_from(self, other: "Walker") -> None:
        """Move this walker onto the leaf node of `other` (keeps its own id)."""
        self.state = other.state
        self.observation = other.observation
        self.cum_reward = other.cum_reward
        self.alive = other.alive
        self.root_action = other.root_action
        self.depth = other.depth


@dataclass
class Swarm:
    """Fixed-size population of walkers scanning the future from one root.

    Attributes:
        walkers: Walkers; the list length never changes
        params: Planning parameters
        rng: The single random stream every draw comes from
        samples_used: Environment steps consumed so far
    """

    walkers: list[Walker]
    params: FmcParams
    rng: np.random.Generator
    samples_used: int = 0

    def __len__(self) -> int:
        return len(self.walkers)

    def alive_mask(self) -> np.ndarray:
        return np.array([w.alive for w in self.walkers], dtype=bool)

    @property
    def n_alive(self) -> int:
        return sum(w.alive for w in self.walkers)

    def observations(self) -> np.ndarray:
        return np.asarray([w.observation for w in self.walkers], dtype=float)

    def cum_rewards(self) -> np.ndarray:
        return np.array([w.cum_reward for w in self.walkers], dtype=float)

    def depths(self) -> tuple[int, ...]:
        return tuple(w.depth for w in self.walkers)

    def horizon_reached(self) -> bool:
        """True if every alive walker has met the time horizon."""
        target = self.params.horizon_steps
        return all(w.depth >= target for w in self.walkers if w.alive)


def init_swarm(root_state: Any, root_observation, params: FmcParams) -> Swarm:
    """Create n_walkers identical, alive walkers at the root.

    Raises:
        ParameterError: If the parameters are invalid
    """
    try:
        params.validate()
    except ValueError as e:
        raise ParameterError(str(e)) from e

    observation = tuple(float(v) for v in root_observation)
    walkers = [
        Walker(id=i, state=root_state, observation=observation)
        for i in range(params.n_walkers)
    ]
    return Swarm(walkers=walkers, params=params, rng=np.random.default_rng(params.seed))


def perturb(swarm: Swarm, env: Environment) -> Swarm:
    """Advance every alive walker below the horizon by one decision tick.

    Each such walker draws a uniform random action (in walker-index order)
    and repeats it for dt environment steps, stopping early on death. Every
    environment step counts as one sample. A sweep always runs to the end, so
    the caller checks max_samples between sweeps and may overshoot it by at
    most n_walkers * dt.

    Raises:
        ContractViolationError: If no alive walker is below the horizon
    """
    target = swarm.params.horizon_steps
    active = [w for w in swarm.walkers if w.alive and w.depth < target]
    if not active:
        raise ContractViolationError("No alive walker is below the horizon depth")

    actions = [env.action_space.sample(swarm.rng) for _ in active]

    pending = list(zip(active, actions))
    for _ in range(swarm.params.repeat):
        pending = [(w, a) for w, a in pending if w.alive and w.depth < target]
        if not pending:
            break

        outcomes = env.step_batch([(w.state, a) for w, a in pending])
        swarm.samples_used += len(pending)

        for (walker, action), outcome in zip(pending, outcomes):
            if walker.depth == 0:
                walker.root_action = action
            walker.state = outcome.next_state
            walker.observation = tuple(outcome.observation)
            walker.cum_reward += outcome.reward
            walker.depth += 1
            if outcome.dead:
                walker.alive = False

    return swarm


def _alive_companions(alive: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Draw one alive companion per walker, never itself unless it is the only one."""
    alive_idx = np.flatnonzero(alive)
    n_alive = alive_idx.size
    if n_alive == 1:
        return np.full(alive.size, alive_idx[0])

    # Slot of each alive walker within alive_idx
    slots = np.cumsum(alive) - 1
    highs = np.where(alive, n_alive - 1, n_alive)
    draws = rng.integers(0, highs)
    draws = np.where(alive & (draws >= slots), draws + 1, draws)
    return alive_idx[draws]


def evaluate(swarm: Swarm, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Virtual reward of every walker relative to the whole swarm.

    Distances are measured to a random alive companion; rewards and distances
    of all walkers are relativized, multiplied, and dead walkers get 0.

    Raises:
        AllWalkersDeadError: If no walker is alive
    """
    rng = swarm.rng if rng is None else rng
    alive = swarm.alive_mask()
    if not alive.any():
        raise AllWalkersDeadError("Cannot evaluate a swarm with no alive walker")

    companions = _alive_companions(alive, rng)
    observations = swarm.observations()
    distances = np.linalg.norm(observations - observations[companions], axis=1)

    scores = virtual_reward(relativize(swarm.cum_rewards()), relativize(distances))
    scores[~alive] = 0.0
    return scores


def clone_probability(
    vr_self: float, vr_target: float, self_alive: bool, target_alive: bool
) -> float:
    """Probability that a walker clones onto its companion's leaf.

    Formula: clamp((vr_target - vr_self) / max(vr_self, ε), 0, 1); a dead
    target is never cloned to and a dead walker always clones to an alive one.
    """
    if not target_alive:
        return 0.0
    if not self_alive:
        return 1.0
    ratio = (vr_target - vr_self) / max(vr_self, CLONE_EPSILON)
    return float(min(max(ratio, 0.0), 1.0))


def clone_probabilities(
    virtual_rewards: np.ndarray, alive: np.ndarray, companions: np.ndarray
) -> np.ndarray:
    """Vectorized `clone_probability` for a whole swarm."""
    vr_target = virtual_rewards[companions]
    ratio = (vr_target - virtual_rewards) / np.maximum(virtual_rewards, CLONE_EPSILON)
    probs = np.clip(ratio, 0.0, 1.0)
    probs = np.where(alive, probs, 1.0)
    return np.where(alive[companions], probs, 0.0)


def recycle(
    swarm: Swarm, virtual_rewards, rng: Optional[np.random.Generator] = None
) -> Swarm:
    """Clone walkers onto better-valued (or alive) companions.

    Every walker draws a uniform companion among all walkers; decisions are
    taken against the pre-recycle swarm and applied simultaneously.

    Raises:
        AllWalkersDeadError: If no walker is alive
    """
    rng = swarm.rng if rng is None else rng
    alive = swarm.alive_mask()
    if not alive.any():
        raise AllWalkersDeadError("Cannot recycle a swarm with no alive walker")

    n = len(swarm)
    companions = rng.integers(0, n, size=n)
    draws = rng.random(n)
    probs = clone_probabilities(np.asarray(virtual_rewards, dtype=float), alive, companions)

    snapshot = [Walker(**vars(w)) for w in swarm.walkers]
    for i in np.flatnonzero(draws < probs):
        swarm.walkers[i].clone_from(snapshot[companions[i]])

    return swarm


def _count_root_actions(
    walkers: list[Walker], actions: tuple[Action, ...]
) -> np.ndarray:
    index = {action: i for i, action in enumerate(actions)}
    counts = np.zeros(len(actions), dtype=int)
    for walker in walkers:
        counts[index[walker.root_action]] += 1
    return counts


def _nearest_action(space: ActionSpace, utilities: Distribution) -> int:
    """Discrete action whose embedding is nearest to the utility-weighted mean."""
    embeddings = space.embedding_matrix()
    mean = utilities.as_array() @ embeddings
    distances = np.linalg.norm(embeddings - mean, axis=1)
    return int(np.flatnonzero(distances <= distances.min() + TIE_TOLERANCE)[0])


def _reward_divergence(
    swarm: Swarm, actions: tuple[Action, ...], utilities: Distribution
) -> float:
    """Divergence of the deciding policy from the reward density over root actions."""
    scores = relativize(swarm.cum_rewards())
    index = {action: i for i, action in enumerate(actions)}
    per_action = np.zeros(len(actions))
    for walker, score in zip(swarm.walkers, scores):
        if walker.alive and walker.root_action is not None:
            per_action[index[walker.root_action]] += score

    try:
        density = reward_density(per_action)
    except DegenerateSliceError:
        logger.debug("No alive walker carries reward; using a uniform density")
        density = Distribution.uniform(len(actions))
    return entropic_divergence(utilities, density)


def choose(swarm: Swarm, action_space: ActionSpace) -> Decision:
    """Turn walker counts per root action into a decision.

    Utilities are the normalized counts of alive walkers per root action (all
    walkers if none is alive). Continuous spaces take the utility-weighted
    mean of the root actions; discrete spaces take the action whose embedding
    is nearest to the weighted mean embedding, ties to the lowest index.

    Raises:
        ContractViolationError: If no walker has acted yet
    """
    acted = [w for w in swarm.walkers if w.root_action is not None]
    if not acted:
        raise ContractViolationError("No walker has taken a root action")

    if action_space.is_discrete:
        actions = tuple(range(action_space.n))
    else:
        actions = tuple(dict.fromkeys(w.root_action for w in acted))

    walker_counts = _count_root_actions(acted, actions)
    alive_counts = _count_root_actions([w for w in acted if w.alive], actions)
    basis = alive_counts if alive_counts.sum() > 0 else walker_counts
    utilities = Distribution.from_counts(basis)

    if action_space.is_discrete:
        action = _nearest_action(action_space, utilities)
    else:
        mean = utilities.as_array() @ np.asarray(actions, dtype=float)
        mean = np.clip(mean, action_space.low, action_space.high)
        action = tuple(float(v) for v in mean)

    return Decision(
        action=action,
        actions=actions,
        utilities=utilities,
        samples_used=swarm.samples_used,
        walker_counts=tuple(int(c) for c in walker_counts),
        alive_counts=tuple(int(c) for c in alive_counts),
        divergence=entropic_divergence(utilities, Distribution.uniform(len(actions))),
        reward_divergence=_reward_divergence(swarm, actions, utilities),
    )
