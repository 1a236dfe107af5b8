"""Logging configuration for bench runs."""

import logging
from pathlib import Path
from typing import Optional

DEFAULT_LOG_FILE = "logs/bench.log"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def configure_logging(
    level: str = "INFO", log_file: Optional[str] = DEFAULT_LOG_FILE
) -> None:
    """
    Configure root logging with a console handler and an optional log file.

    Args:
        level: Logging level name (DEBUG, INFO, WARNING, ...)
        log_file: Log file path; its directory is created if needed. None
            disables file logging.
    """
    handlers: list[logging.Handler] = [logging.StreamHandler()]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
