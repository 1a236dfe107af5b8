"""Exhaustive search over small instances, the ground truth for planner tests."""

from dataclasses import dataclass
from typing import Any, Optional, Sequence

from ..environments.base import Environment
from .exceptions import SizeLimitError, UnsupportedSpaceError

# Largest number of action sequences exhaustive_values will enumerate
MAX_SEQUENCES = 10**7


@dataclass(frozen=True)
class ActionValue:
    """Best achievable outcome after taking one root action.

    Attributes:
        action: Root action index
        optimal_return: Maximum undiscounted return of any continuation
        reachable_alive: True if some continuation stays alive to the horizon
    """

    action: int
    optimal_return: float
    reachable_alive: bool


@dataclass(frozen=True)
class ActionValueTable:
    """Per-root-action values of an exhaustive search.

    Attributes:
        entries: One entry per discrete action, ordered by action index
        horizon: Environment steps enumerated
        nodes: Search-tree nodes visited, root included
    """

    entries: tuple[ActionValue, ...]
    horizon: int
    nodes: int

    def __getitem__(self, action: int) -> ActionValue:
        return self.entries[action]

    def __len__(self) -> int:
        return len(self.entries)


def exhaustive_values(
    env: Environment,
    root_state: Any,
    horizon: int,
    action_order: Optional[Sequence[int]] = None,
) -> ActionValueTable:
    """Enumerate every action sequence up to `horizon` steps, depth first.

    Dead and terminal states end their subtree. A horizon below 1 is treated
    as 1: every root action is stepped exactly once.

    Args:
        env: Environment with a discrete action space
        root_state: State to search from
        horizon: Sequence length in environment steps
        action_order: Order in which actions are enumerated (default: by index)

    Returns:
        ActionValueTable with one entry per action

    Raises:
        UnsupportedSpaceError: If the action space is continuous
        SizeLimitError: If |A|^horizon exceeds MAX_SEQUENCES
    """
    space = env.action_space
    if not space.is_discrete:
        raise UnsupportedSpaceError("Exhaustive search needs a discrete action space")

    horizon = max(horizon, 1)
    if space.n**horizon > MAX_SEQUENCES:
        raise SizeLimitError(
            f"{space.n}^{horizon} sequences exceed the limit of {MAX_SEQUENCES}"
        )

    order = list(range(space.n)) if action_order is None else list(action_order)
    nodes = 1

    def search(state: Any, remaining: int) -> tuple[float, bool]:
        """Best return below `state` and whether a full-length alive path exists."""
        nonlocal nodes
        best_return, alive = None, False
        for action in order:
            outcome = env.step(state, action)
            nodes += 1
            value, survives = outcome.reward, not outcome.dead
            if survives and not outcome.terminal and remaining > 1:
                tail, survives = search(outcome.next_state, remaining - 1)
                value += tail
            best_return = value if best_return is None else max(best_return, value)
            alive = alive or survives
        return best_return, alive

    values = {}
    for action in order:
        outcome = env.step(root_state, action)
        nodes += 1
        value, survives = outcome.reward, not outcome.dead
        if survives and not outcome.terminal and horizon > 1:
            tail, survives = search(outcome.next_state, horizon - 1)
            value += tail
        values[action] = ActionValue(action, value, survives)

    return ActionValueTable(
        entries=tuple(values[a] for a in range(space.n)), horizon=horizon, nodes=nodes
    )


def oracle_best_action(table: ActionValueTable) -> int:
    """Highest optimal return; ties prefer an alive continuation, then the lowest index."""
    if not table.entries:
        raise ValueError("Action value table is empty")

    best = max(
        table.entries,
        key=lambda e: (e.optimal_return, e.reachable_alive, -e.action),
    )
    return best.action
