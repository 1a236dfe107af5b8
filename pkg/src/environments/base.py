"""Base class for clonable, deterministic environments."""

from abc import ABC, abstractmethod
from typing import Any, Iterable, Sequence

from ..models.action_space import Action, ActionSpace
from ..models.environment import EnvironmentDescriptor, StepOutcome


class Environment(ABC):
    """Abstract base class for environments planners can search over.

    States are immutable values: cloning a walker copies its state value and
    stepping never mutates the environment object. `step` must be a pure
    function of (state, action); dead and terminal states are absorbing.

    Subclasses must implement `descriptor`, `reset` and `step`.
    """

    @property
    @abstractmethod
    def descriptor(self) -> EnvironmentDescriptor:
        """Static description of the environment."""
        pass

    @property
    def action_space(self) -> ActionSpace:
        return self.descriptor.action_space

    @property
    def name(self) -> str:
        return self.descriptor.name

    @abstractmethod
    def reset(self, seed: int) -> tuple[Any, tuple[float, ...]]:
        """Return the root state and its observation; deterministic given seed."""
        pass

    @abstractmethod
    def step(self, state: Any, action: Action) -> StepOutcome:
        """Apply `action` to `state`.

        Raises:
            ContractViolationError: If the action is outside the action space
        """
        pass

    def step_batch(self, pairs: Iterable[tuple[Any, Action]]) -> list[StepOutcome]:
        """Step several independent (state, action) pairs, results in input order."""
        return [self.step(state, action) for state, action in pairs]

    def end_planning(self, keep: Sequence[Any] = ()) -> None:
        """Hook called when a planning call is finished with its states.

        In-process states are plain values, so the default does nothing.
        Environments that hold states elsewhere may free every state issued
        since the previous call except those in `keep`.
        """
        pass
