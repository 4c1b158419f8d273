"""
Logging setup shared by the command-line harness.
"""

import sys

from loguru import logger as log

from src.config.settings import settings


def configure_logging(level: str = settings.log) -> None:
    """
    Replace loguru's default sink with a stderr sink at the requested level.

    Args:
        level: Minimum level that reaches the sink.
    """
    log.remove()
    log.add(
        sys.stderr,
        level=level,
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | "
        "<cyan>{name}</cyan> - <level>{message}</level>",
    )
    log.debug("Logging configured at level {}", level)
