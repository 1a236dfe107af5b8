"""Benchmark harness: run configuration, agents, runs, comparisons and traces."""

from .exceptions import BenchError, ConfigError
from .config import RunConfig, load_run_config, apply_overrides
from .results import ResultRow, write_results
from .runner import compare, efficiency, format_efficiency, format_table, run, run_episodes
from .trace import emit_trace, read_trace

__all__ = [
    "BenchError",
    "ConfigError",
    "RunConfig",
    "load_run_config",
    "apply_overrides",
    "ResultRow",
    "write_results",
    "run",
    "run_episodes",
    "compare",
    "efficiency",
    "format_efficiency",
    "format_table",
    "emit_trace",
    "read_trace",
]
