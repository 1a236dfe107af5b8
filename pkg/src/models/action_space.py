"""Action space model shared by environments and planners."""

from dataclasses import dataclass, field
from numbers import Integral
from typing import Union

import numpy as np

from . import ActionSpaceKind

# Discrete actions are indices; continuous actions are real vectors
Action = Union[int, tuple[float, ...]]


@dataclass(frozen=True)
class ActionSpace:
    """Discrete or continuous (box) action space.

    Discrete spaces carry one numeric embedding per action index; the planner
    uses them to pick the action nearest to a utility-weighted mean. The
    default embeddings are one-hot.

    Attributes:
        kind: Discrete or continuous
        embeddings: Discrete only, one vector per action index
        low: Continuous only, per-dimension lower bounds
        high: Continuous only, per-dimension upper bounds
        labels: Optional human-readable action names (discrete)
    """

    kind: ActionSpaceKind
    embeddings: tuple[tuple[float, ...], ...] = ()
    low: tuple[float, ...] = ()
    high: tuple[float, ...] = ()
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.kind == ActionSpaceKind.DISCRETE:
            if not self.embeddings:
                raise ValueError("Discrete action space needs at least one action")
            dims = {len(e) for e in self.embeddings}
            if len(dims) != 1 or 0 in dims:
                raise ValueError("All action embeddings must share one positive dimension")
            if self.labels and len(self.labels) != len(self.embeddings):
                raise ValueError(
                    f"Got {len(self.labels)} labels for {len(self.embeddings)} actions"
                )
        else:
            if not self.low or len(self.low) != len(self.high):
                raise ValueError("low and high must be non-empty and of equal length")
            for i, (lo, hi) in enumerate(zip(self.low, self.high)):
                if not lo < hi:
                    raise ValueError(f"Dimension {i}: low ({lo}) must be < high ({hi})")

    @classmethod
    def discrete(
        cls,
        n: int | None = None,
        *,
        embeddings=None,
        labels: tuple[str, ...] = (),
    ) -> "ActionSpace":
        """Build a discrete space from a size (one-hot) or explicit embeddings."""
        if embeddings is None:
            if n is None or n < 1:
                raise ValueError(f"Discrete action space needs n ≥ 1, got {n}")
            embeddings = np.eye(n)
        return cls(
            kind=ActionSpaceKind.DISCRETE,
            embeddings=tuple(tuple(float(v) for v in row) for row in embeddings),
            labels=tuple(labels),
        )

    @classmethod
    def continuous(cls, low, high) -> "ActionSpace":
        """Build a box space from per-dimension bounds."""
        return cls(
            kind=ActionSpaceKind.CONTINUOUS,
            low=tuple(float(v) for v in low),
            high=tuple(float(v) for v in high),
        )

    @property
    def is_discrete(self) -> bool:
        return self.kind == ActionSpaceKind.DISCRETE

    @property
    def n(self) -> int:
        """Number of discrete actions."""
        if not self.is_discrete:
            raise ValueError("Continuous action space has no action count")
        return len(self.embeddings)

    @property
    def dim(self) -> int:
        """Dimension of an action vector (embedding dimension if discrete)."""
        if self.is_discrete:
            return len(self.embeddings[0])
        return len(self.low)

    def embedding_matrix(self) -> np.ndarray:
        """Embeddings as an (n, dim) float array."""
        return np.asarray(self.embeddings, dtype=float)

    def contains(self, action) -> bool:
        """Check whether `action` belongs to this space."""
        if self.is_discrete:
            if isinstance(action, bool) or not isinstance(action, Integral):
                return False
            return 0 <= int(action) < self.n

        try:
            values = np.asarray(action, dtype=float)
        except (TypeError, ValueError):
            return False
        if values.shape != (self.dim,) or not np.all(np.isfinite(values)):
            return False
        return bool(np.all(values >= self.low) and np.all(values <= self.high))

    def normalize(self, action) -> Action:
        """Canonical, hashable form of an action (int or tuple of floats).

        Raises:
            ValueError: If the action is outside the space
        """
        if not self.contains(action):
            raise ValueError(f"Action {action!r} is outside the action space")
        if self.is_discrete:
            return int(action)
        return tuple(float(v) for v in action)

    def sample(self, rng: np.random.Generator) -> Action:
        """Draw a uniform random action."""
        if self.is_discrete:
            return int(rng.integers(self.n))
        return tuple(float(v) for v in rng.uniform(self.low, self.high))

    def label(self, action: Action) -> str:
        """Display name of an action."""
        if self.is_discrete and self.labels:
            return self.labels[int(action)]
        return str(action)

    def to_dict(self) -> dict:
        """Export to a JSON-serializable dict."""
        if self.is_discrete:
            return {
                "kind": self.kind.value,
                "actions": [list(e) for e in self.embeddings],
                "labels": list(self.labels),
            }
        return {"kind": self.kind.value, "low": list(self.low), "high": list(self.high)}

    @classmethod
    def from_dict(cls, data: dict) -> "ActionSpace":
        """Rebuild from `to_dict` output."""
        kind = ActionSpaceKind(data["kind"])
        if kind == ActionSpaceKind.DISCRETE:
            return cls.discrete(
                embeddings=data["actions"], labels=tuple(data.get("labels", ()))
            )
        return cls.continuous(data["low"], data["high"])
