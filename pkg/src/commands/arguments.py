"""
Argument types and flag groups shared by the subcommands.
"""

import argparse
import re
from fractions import Fraction

from src.config.settings import settings
from src.schemas.cost_model import Algorithm, to_fraction
from src.schemas.experiment import OutputFormat

_POWER = re.compile(r"^(\d+)(?:\^|\*\*)(\d+)$")


def parse_size(text: str) -> int:
    """Read sizes written as 100000, 1e5, 10^5 or 10**5."""
    power = _POWER.match(text.strip())
    if power:
        return int(power.group(1)) ** int(power.group(2))
    try:
        value = float(text) if ("e" in text.lower() or "." in text) else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a size: {text!r}")
    if value != int(value) or value < 0:
        raise argparse.ArgumentTypeError(f"not a size: {text!r}")
    return int(value)


def parse_ratio(text: str) -> Fraction:
    """Read a ratio written as 0.5 or 1/2."""
    try:
        return to_fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a ratio: {text!r}")


def add_algorithm_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--alg",
        type=Algorithm,
        choices=list(Algorithm),
        default=Algorithm.QUICK_MERGESORT_TD,
        metavar="{" + ",".join(a.value for a in Algorithm) + "}",
        help=f"QuickXsort instantiation (default: {Algorithm.QUICK_MERGESORT_TD.value})",
    )


def add_output_arguments(
    parser: argparse.ArgumentParser, default_format: OutputFormat = OutputFormat.TABLE
) -> None:
    parser.add_argument(
        "--format",
        type=OutputFormat,
        choices=list(OutputFormat),
        default=default_format,
        metavar="{table,csv,tsv}",
        help=f"Output format (default: {default_format.value})",
    )
    parser.add_argument("--out", default=None, help="Write to FILE instead of stdout")


def add_sampling_arguments(parser: argparse.ArgumentParser, multiple: bool) -> None:
    parser.add_argument(
        "--t",
        type=int,
        nargs="+" if multiple else None,
        default=[settings.sampling_t] if multiple else settings.sampling_t,
        help="Sampling parameter t, the pivot is the median of 2t+1 elements",
    )
