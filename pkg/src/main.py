"""
Main entry point for the application.
"""

import argparse
import sys
from typing import List, Optional

from loguru import logger as log
from pydantic import ValidationError

from src.commands import bench, curves, oracle, predict, tables
from src.config.log import configure_logging
from src.config.settings import settings
from src.errors import ContractViolation, VerificationError

COMMANDS = (predict, tables, bench, oracle, curves)


def create_parser() -> argparse.ArgumentParser:
    """Creates the argument parser with every subcommand registered."""
    parser = argparse.ArgumentParser(
        prog="quickxsort",
        description="QuickXsort sorters, cost theory and the experiments around them.",
    )
    parser.add_argument(
        "--log",
        default=settings.log,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Log level for messages on stderr",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Returns:
        int: 0 on success, 1 if a run failed verification or the oracle disagreed,
        2 on invalid input.
    """
    args = create_parser().parse_args(argv)
    configure_logging(args.log)
    log.debug("Running {}", args.command)
    try:
        return int(args.handler(args))
    except VerificationError as e:
        log.error("Verification failed: {}", e)
        return 1
    except (ContractViolation, ValidationError) as e:
        log.error("Invalid input: {}", e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
