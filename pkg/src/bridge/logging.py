"""Logging helpers for bridge operations."""

import logging
from functools import wraps

logger = logging.getLogger("bridge")


def log_call(func):
    """
    Decorator to log bridge calls.

    Args:
        func: Function to decorate

    Returns:
        Wrapped function
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        func_name = func.__name__
        logger.debug(f"Bridge call: {func_name}")

        try:
            result = func(*args, **kwargs)
            logger.debug(f"Bridge call successful: {func_name}")
            return result
        except Exception as e:
            logger.error(f"Bridge call failed: {func_name} - {e}")
            raise

    return wrapper
