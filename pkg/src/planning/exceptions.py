"""Custom exceptions for the planning engine."""


class PlanningError(Exception):
    """Base exception for planning-related errors."""

    pass


class ContractViolationError(PlanningError, ValueError):
    """Exception for violated operation preconditions."""

    pass


class ParameterError(PlanningError, ValueError):
    """Exception for invalid planner parameters."""

    pass


class DegenerateSliceError(PlanningError):
    """Exception for a swarm slice whose rewards are all zero."""

    pass


class AllWalkersDeadError(PlanningError):
    """Raised when an operation needs an alive walker and none is left."""

    pass


class UnsupportedSpaceError(PlanningError):
    """Exception for planners used on an action space they cannot handle."""

    pass


class SizeLimitError(PlanningError):
    """Exception for exhaustive searches over instances that are too large."""

    pass
