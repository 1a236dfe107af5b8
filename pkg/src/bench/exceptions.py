"""Bench harness exceptions."""


class BenchError(Exception):
    """Base exception for benchmark harness errors."""

    pass


class ConfigError(BenchError):
    """Exception raised when a run configuration is invalid or unusable."""

    pass
