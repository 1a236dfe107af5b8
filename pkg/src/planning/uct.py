"""UCT (UCB1 tree search) baseline over the same environment contract."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from ..environments.base import Environment
from ..models.decision import Decision
from ..models.distribution import Distribution
from ..models.planner_params import UctParams
from .exceptions import ParameterError, UnsupportedSpaceError
from .stats import entropic_divergence

logger = logging.getLogger(__name__)


@dataclass
class UctNode:
    """Node of the UCT search tree.

    Attributes:
        state: Environment state value of the node
        depth: Environment steps from the root
        reward: Reward of the transition into this node
        dead: True if the state is dead (no expansion, no rollout)
        terminal: True if the state ends the episode (no expansion, no rollout)
        visit_count: Iterations that passed through this node
        total_value: Sum of the path returns backed up through this node
        children: Expanded children by action index
        untried: Action indices not expanded yet
    """

    state: Any
    depth: int = 0
    reward: float = 0.0
    dead: bool = False
    terminal: bool = False
    visit_count: int = 0
    total_value: float = 0.0
    children: dict[int, "UctNode"] = field(default_factory=dict)
    untried: list[int] = field(default_factory=list)

    @property
    def mean_value(self) -> float:
        return self.total_value / self.visit_count if self.visit_count else 0.0

    def is_leaf(self) -> bool:
        return self.dead or self.terminal

    def select_child(self, exploration_c: float) -> tuple[int, "UctNode"]:
        """Child maximizing mean + c·sqrt(ln N / n); ties to the lowest action."""
        log_n = math.log(self.visit_count)
        best_action, best_score = None, -math.inf
        for action in sorted(self.children):
            child = self.children[action]
            score = child.mean_value + exploration_c * math.sqrt(log_n / child.visit_count)
            if score > best_score:
                best_action, best_score = action, score
        return best_action, self.children[best_action]


@dataclass
class UctSearch:
    """Result of a UCT planning call.

    Attributes:
        root: Root of the search tree
        iterations: Selection-expansion-rollout-backup cycles run
        samples_used: Environment steps consumed
    """

    root: UctNode
    iterations: int
    samples_used: int

    def best_action(self) -> int:
        """Most visited root child; ties to the lowest action index."""
        return max(
            sorted(self.root.children),
            key=lambda a: self.root.children[a].visit_count,
        )


class UctPlanner:
    """Standard UCT: UCB1 selection, single expansion, uniform rollout, summed-reward backup."""

    def __init__(self, env: Environment, params: UctParams):
        """Initialize the planner.

        Raises:
            UnsupportedSpaceError: If the action space is continuous
            ParameterError: If the parameters are invalid
        """
        if not env.action_space.is_discrete:
            raise UnsupportedSpaceError("UCT supports discrete action spaces only")
        try:
            params.validate()
        except ValueError as e:
            raise ParameterError(str(e)) from e

        self.env = env
        self.params = params
        self.n_actions = env.action_space.n
        self.rng = np.random.default_rng(params.seed)
        self.samples_used = 0

    def search(self, root_state: Any) -> UctSearch:
        """Grow a tree from `root_state` until the sample budget is spent."""
        root = self._new_node(root_state, depth=0)
        iterations = 0

        # Every iteration normally costs ≥ 1 sample; the iteration cap covers
        # trees whose reachable part is exhausted
        while (
            self.samples_used < self.params.budget_samples
            and iterations < self.params.budget_samples
        ):
            self._iterate(root)
            iterations += 1

        return UctSearch(root=root, iterations=iterations, samples_used=self.samples_used)

    def _new_node(self, state: Any, depth: int, reward: float = 0.0,
                  dead: bool = False, terminal: bool = False) -> UctNode:
        node = UctNode(state=state, depth=depth, reward=reward, dead=dead, terminal=terminal)
        if not node.is_leaf() and depth < self.params.rollout_horizon:
            node.untried = list(range(self.n_actions))
        return node

    def _iterate(self, root: UctNode) -> None:
        node = root
        path = [root]
        value = 0.0

        # Selection
        while not node.untried and node.children:
            _, node = node.select_child(self.params.exploration_c)
            path.append(node)
            value += node.reward

        # Expansion
        if node.untried:
            action = node.untried.pop(int(self.rng.integers(len(node.untried))))
            outcome = self.env.step(node.state, action)
            self.samples_used += 1
            child = self._new_node(
                outcome.next_state,
                depth=node.depth + 1,
                reward=outcome.reward,
                dead=outcome.dead,
                terminal=outcome.terminal,
            )
            node.children[action] = child
            node = child
            path.append(node)
            value += node.reward

        value += self._rollout(node)

        # Backup
        for visited in path:
            visited.visit_count += 1
            visited.total_value += value

    def _rollout(self, node: UctNode) -> float:
        """Uniform random rollout from `node` until the rollout horizon or death."""
        if node.is_leaf():
            return 0.0

        state = node.state
        value = 0.0
        for _ in range(self.params.rollout_horizon - node.depth):
            outcome = self.env.step(state, int(self.rng.integers(self.n_actions)))
            self.samples_used += 1
            value += outcome.reward
            state = outcome.next_state
            if outcome.dead or outcome.terminal:
                break
        return value


def uct_decide(env: Environment, root_state: Any, params: UctParams) -> Decision:
    """Plan with UCT and report the result in the shared decision format.

    Utilities are the normalized visit counts of the root children.
    """
    planner = UctPlanner(env, params)
    try:
        search = planner.search(root_state)
    finally:
        env.end_planning(keep=[root_state])

    counts = np.array(
        [
            search.root.children[a].visit_count if a in search.root.children else 0
            for a in range(planner.n_actions)
        ]
    )
    if counts.sum() > 0:
        utilities = Distribution.from_counts(counts)
    else:
        utilities = Distribution.uniform(planner.n_actions)
    action: Optional[int] = search.best_action() if search.root.children else 0

    logger.debug(
        f"uct: {search.iterations} iterations, {search.samples_used} samples, "
        f"action={action}"
    )
    return Decision(
        action=action,
        actions=tuple(range(planner.n_actions)),
        utilities=utilities,
        samples_used=search.samples_used,
        walker_counts=tuple(int(c) for c in counts),
        alive_counts=tuple(int(c) for c in counts),
        divergence=entropic_divergence(
            utilities, Distribution.uniform(planner.n_actions)
        ),
    )


def uct_plan_step(env: Environment, root_state: Any, params: UctParams) -> tuple[int, int]:
    """Plan with UCT from `root_state`.

    Returns:
        Tuple of (most visited root action, environment steps used)

    Raises:
        UnsupportedSpaceError: If the action space is continuous
    """
    decision = uct_decide(env, root_state, params)
    return decision.action, decision.samples_used
