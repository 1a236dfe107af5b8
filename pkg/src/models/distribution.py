"""Probability distribution over a finite support."""

from dataclasses import dataclass

import numpy as np

# Maximum deviation of the weight sum from 1.0
SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Distribution:
    """Normalized weights over a finite, ordered support.

    Attributes:
        weights: Non-negative weights summing to 1 (within SUM_TOLERANCE)
    """

    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))

        if not self.weights:
            raise ValueError("Distribution needs at least one weight")

        if any(not np.isfinite(w) or w < 0 for w in self.weights):
            raise ValueError(f"Weights must be finite and non-negative, got {self.weights}")

        total = sum(self.weights)
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"Weights must sum to 1.0 (±{SUM_TOLERANCE}), got {total}")

    @classmethod
    def uniform(cls, size: int) -> "Distribution":
        """Uniform distribution over `size` outcomes."""
        if size < 1:
            raise ValueError(f"size must be positive, got {size}")
        return cls(tuple([1.0 / size] * size))

    @classmethod
    def from_counts(cls, counts) -> "Distribution":
        """Normalize non-negative counts into a distribution.

        Raises:
            ValueError: If all counts are zero
        """
        values = np.asarray(counts, dtype=float)
        total = values.sum()
        if total <= 0:
            raise ValueError("Cannot normalize: all counts are zero")
        return cls(tuple(values / total))

    def __len__(self) -> int:
        return len(self.weights)

    def as_array(self) -> np.ndarray:
        """Weights as a float array."""
        return np.asarray(self.weights, dtype=float)
