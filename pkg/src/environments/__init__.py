"""Built-in environments and the name registry."""

from .base import Environment
from .chain_trap import ChainTrap
from .point_navigator import PointNavigator
from .trap_gridworld import TrapGridworld

ENVIRONMENTS: dict[str, type[Environment]] = {
    "chain_trap": ChainTrap,
    "trap_gridworld": TrapGridworld,
    "point_navigator": PointNavigator,
}


def make_environment(name: str) -> Environment:
    """Instantiate a built-in environment by registry name.

    Raises:
        KeyError: If no environment has that name
    """
    try:
        return ENVIRONMENTS[name]()
    except KeyError:
        known = ", ".join(sorted(ENVIRONMENTS))
        raise KeyError(f"Unknown environment {name!r} (known: {known})") from None


__all__ = [
    "Environment",
    "ChainTrap",
    "TrapGridworld",
    "PointNavigator",
    "ENVIRONMENTS",
    "make_environment",
]
