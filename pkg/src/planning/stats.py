"""Numeric kernels of the swarm: relativize, virtual reward, densities, divergence."""

import numpy as np

from ..models.distribution import Distribution
from .exceptions import ContractViolationError, DegenerateSliceError


def relativize(values) -> np.ndarray:
    """Map raw values to strictly positive scores that preserve rank order.

    Values are standardized with their mean and population standard deviation,
    then squashed: x → exp(x) for x ≤ 0 and x → 1 + ln(1 + x) for x > 0. Both
    branches give 1 at x = 0. A constant vector maps to all ones.

    Args:
        values: Non-empty vector of reals

    Returns:
        Array of the same length with every element > 0

    Raises:
        ContractViolationError: If values is empty
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ContractViolationError("relativize needs at least one value")

    # Exact check; a computed std of equal floats can be a rounding residue
    if np.ptp(values) == 0:
        return np.ones_like(values)

    # Standardize in [-1, 1] so the squares neither overflow nor underflow
    scaled_values = values / np.abs(values).max()
    std = scaled_values.std()
    if not np.isfinite(std) or std == 0:
        return np.ones_like(values)
    standardized = (scaled_values - scaled_values.mean()) / std

    positive = standardized > 0
    scaled = np.empty_like(standardized)
    scaled[~positive] = np.exp(standardized[~positive])
    scaled[positive] = 1.0 + np.log1p(standardized[positive])
    return scaled


def virtual_reward(relativized_rewards, relativized_distances) -> np.ndarray:
    """Virtual reward: elementwise product of relativized reward and distance.

    Raises:
        ContractViolationError: If the vectors differ in length
    """
    rewards = np.asarray(relativized_rewards, dtype=float)
    distances = np.asarray(relativized_distances, dtype=float)
    if rewards.shape != distances.shape:
        raise ContractViolationError(
            f"Length mismatch: {rewards.size} rewards vs {distances.size} distances"
        )
    return rewards * distances


def reward_density(rewards) -> Distribution:
    """Convert non-negative rewards of a swarm slice into a probability density.

    Formula: weight_i = reward_i / sum(rewards)

    Raises:
        ContractViolationError: If a reward is negative
        DegenerateSliceError: If every reward is zero
    """
    rewards = np.asarray(rewards, dtype=float)
    if rewards.size == 0 or np.any(rewards < 0):
        raise ContractViolationError(f"Rewards must be non-negative, got {rewards}")

    total = rewards.sum()
    if total <= 0:
        raise DegenerateSliceError("All rewards in the slice are zero")

    return Distribution(tuple(rewards / total))


def entropic_divergence(p: Distribution, q: Distribution) -> float:
    """Modified Kullback-Leibler divergence between two distributions.

    Formula: ln(Π(2 - p_i^p_i) / Π(2 - q_i^p_i)), natural log, 0^0 = 1.

    Every factor lies in [1, 2], so the result is finite for any pair,
    including q_i = 0 with p_i > 0.

    Raises:
        ContractViolationError: If the supports differ in size
    """
    p_weights = p.as_array()
    q_weights = q.as_array()
    if p_weights.shape != q_weights.shape:
        raise ContractViolationError(
            f"Support size mismatch: {p_weights.size} vs {q_weights.size}"
        )

    # numpy evaluates 0.0 ** 0.0 as 1.0
    numerator = np.log(2.0 - p_weights**p_weights).sum()
    denominator = np.log(2.0 - q_weights**p_weights).sum()
    return float(numerator - denominator)
