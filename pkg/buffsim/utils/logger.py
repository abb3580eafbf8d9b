"""Logging configuration for buffsim."""

import logging
import sys
from utils.config import LOG_LEVEL

_level = LOG_LEVEL


def setup_logger(name: str) -> logging.Logger:
    """Set up a logger with consistent formatting.

    Diagnostics go to standard error; standard output carries only the
    RESULT line of the command-line tool.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(_level)

    # Avoid duplicate handlers
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(logging.DEBUG)

        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.propagate = False

    return logger


def set_log_level(level: str) -> None:
    """Change the level of every logger created through setup_logger."""
    global _level
    _level = level
    for name, existing in logging.Logger.manager.loggerDict.items():
        if isinstance(existing, logging.Logger) and existing.handlers:
            existing.setLevel(level)
