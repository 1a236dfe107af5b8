"""Command-line interface for benchmark runs."""

import argparse
import sys
from typing import Optional

from pydantic import ValidationError

from ..environments import ENVIRONMENTS
from .config import AGENTS, RunConfig, apply_overrides, load_run_config
from .exceptions import ConfigError
from .logging import DEFAULT_LOG_FILE, configure_logging

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def parse_seeds(value: str) -> list[int]:
    """Parse "1,2,3" or a range "0-9" (inclusive)."""
    try:
        if "-" in value.strip("-") and "," not in value:
            start, end = value.split("-", 1)
            return list(range(int(start), int(end) + 1))
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Invalid seed list {value!r}") from None


def load_with_overrides(args, config_path: Optional[str] = None) -> RunConfig:
    """Read the config file (if any) and apply flag values on top."""
    path = config_path if config_path is not None else args.config
    config = load_run_config(path) if path else RunConfig()
    return apply_overrides(
        config,
        env=args.env,
        agent=getattr(args, "agent", None),
        walkers=args.walkers,
        horizon=args.horizon,
        max_samples=args.max_samples,
        dt=args.dt,
        seeds=args.seeds,
        episodes=args.episodes,
        out=args.out,
        max_steps=args.max_steps,
        workers=args.workers,
    )


def print_rows(rows) -> None:
    print(f"\n{'='*72}")
    print(f"{'agent':<8}{'environment':<18}{'seed':>6}{'score':>12}{'steps':>8}{'samples/step':>14}")
    print(f"{'='*72}")
    for row in rows:
        print(
            f"{row.agent:<8}{row.environment:<18}{row.seed:>6}{row.total_score:>12.2f}"
            f"{row.steps:>8}{row.samples_per_step:>14.1f}"
        )
    print(f"{'='*72}")


def cmd_run(args):
    """Run seeded episodes and write results.csv / results.json."""
    from .runner import run

    config = load_with_overrides(args)
    rows = run(config, trace=args.trace)
    print_rows(rows)
    print(f"\nResults: {config.output.csv_path}, {config.output.json_path}")
    return EXIT_OK


def cmd_trace(args):
    """Run seeded episodes and write the per-iteration swarm trace."""
    from .runner import run

    config = load_with_overrides(args)
    run(config, trace=True)
    print(f"Trace: {config.output.trace_path}")
    return EXIT_OK


def cmd_compare(args):
    """Run two configurations over the same seeds and print the comparison table."""
    from .runner import compare, format_table, write_comparison

    config_a = load_with_overrides(args, args.config_a)
    config_b = load_with_overrides(args, args.config_b)
    table = compare(config_a, config_b)

    print(format_table(table))
    csv_path, text_path = write_comparison(table, config_a.output.directory)
    print(f"\nComparison: {csv_path}, {text_path}")
    return EXIT_OK


def cmd_list_envs(args):
    """List built-in environments."""
    for name in sorted(ENVIRONMENTS):
        descriptor = ENVIRONMENTS[name]().descriptor
        space = descriptor.action_space
        actions = f"{space.n} actions" if space.is_discrete else f"box[{space.dim}]"
        print(
            f"{name:<18}{actions:<12}obs_dim={descriptor.observation_dim:<4}"
            f"max_steps={descriptor.max_episode_steps}"
        )
    return EXIT_OK


def add_run_flags(parser: argparse.ArgumentParser, with_agent: bool = True) -> None:
    parser.add_argument("--env", help="Environment name or bridge endpoint (tcp://host:port, exec:<cmd>)")
    if with_agent:
        parser.add_argument("--agent", choices=AGENTS, help="Agent to run")
    parser.add_argument("--walkers", type=int, help="FMC number of walkers")
    parser.add_argument("--horizon", type=float, help="FMC time horizon (environment steps)")
    parser.add_argument("--max-samples", type=int, help="FMC samples per planning call")
    parser.add_argument("--dt", type=int, help="FMC repeat actions")
    parser.add_argument("--seeds", type=parse_seeds, help="Seeds, e.g. 1,2,3 or 0-9")
    parser.add_argument("--episodes", type=int, help="Number of episodes")
    parser.add_argument("--max-steps", type=int, help="Environment steps per episode")
    parser.add_argument("--workers", type=int, help="Parallel episodes (in-process only)")
    parser.add_argument("--out", help="Output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Fractal Monte Carlo planning bench")
    parser.add_argument("--log-level", default="INFO", help="Logging level")
    parser.add_argument("--log-file", default=DEFAULT_LOG_FILE, help="Log file path")

    subparsers = parser.add_subparsers(dest="command", help="Commands")

    # Run command
    run_parser = subparsers.add_parser("run", help="Run seeded episodes")
    run_parser.add_argument("--config", "-c", help="Path to run configuration (JSON)")
    add_run_flags(run_parser)
    run_parser.add_argument("--trace", action="store_true", help="Also write trace.jsonl")
    run_parser.set_defaults(func=cmd_run)

    # Trace command
    trace_parser = subparsers.add_parser("trace", help="Run and write the swarm trace")
    trace_parser.add_argument("--config", "-c", help="Path to run configuration (JSON)")
    add_run_flags(trace_parser)
    trace_parser.set_defaults(func=cmd_trace)

    # Compare command
    compare_parser = subparsers.add_parser("compare", help="Compare two configurations")
    compare_parser.add_argument("config_a", help="Baseline run configuration")
    compare_parser.add_argument("config_b", help="Run configuration to compare")
    add_run_flags(compare_parser, with_agent=False)
    compare_parser.set_defaults(func=cmd_compare)

    # List-envs command
    list_parser = subparsers.add_parser("list-envs", help="List built-in environments")
    list_parser.set_defaults(func=cmd_list_envs)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_CONFIG

    configure_logging(args.log_level, args.log_file or None)

    try:
        return args.func(args)
    except (ConfigError, ValidationError) as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
