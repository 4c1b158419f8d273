"""
`oracle`: the cost recurrence checked against exhaustive enumeration.
"""

import argparse
from fractions import Fraction
from typing import Any, List

from loguru import logger as log

from src.commands.arguments import (
    add_algorithm_argument,
    add_output_arguments,
    add_sampling_arguments,
)
from src.commands.output import emit, render
from src.config.settings import settings
from src.schemas.cost_model import Algorithm
from src.schemas.experiment import OracleRow
from src.services.oracle_service import exhaustive_avg, recurrence_for

HEADERS = ["n", "recurrence", "decimal", "enumeration", "verdict"]


def oracle_rows(
    algorithm: Algorithm,
    n_max: int,
    t: int,
    enumeration_limit: int = settings.oracle_enumeration_limit,
    workers: int = 1,
) -> List[OracleRow]:
    """
    Recurrence values for n = 0..n_max, enumerated as well up to `enumeration_limit`.

    Both sides use base threshold 0 and DeterministicPrefix sampling.
    """
    table = recurrence_for(algorithm, n_max, t)
    rows: List[OracleRow] = []
    for n, value in enumerate(table.c):
        recurrence = value if isinstance(value, Fraction) else float(value)
        enumeration = None
        if n <= enumeration_limit:
            enumeration = exhaustive_avg(n, algorithm, t, workers=workers)
        rows.append(OracleRow(n=n, recurrence=recurrence, enumeration=enumeration))
    return rows


def cmd_oracle(args: argparse.Namespace) -> int:
    rows = oracle_rows(args.alg, args.n, args.t, workers=args.workers)
    table = [
        [r.n, r.recurrence, float(r.recurrence), r.enumeration, r.passed]
        for r in rows
    ]
    emit(render(HEADERS, table, args.format), args.out)
    failed = [r.n for r in rows if r.passed is False]
    if failed:
        log.error("Recurrence and enumeration disagree for n in {}", failed)
        return 1
    return 0


def register(subparsers: Any) -> None:
    parser = subparsers.add_parser(
        "oracle", help="Exact recurrence values checked against enumeration"
    )
    add_algorithm_argument(parser)
    parser.add_argument(
        "--n",
        type=int,
        default=settings.oracle_enumeration_limit,
        help="Largest size to solve the recurrence for",
    )
    add_sampling_arguments(parser, multiple=False)
    parser.add_argument("--workers", type=int, default=1)
    add_output_arguments(parser)
    parser.set_defaults(handler=cmd_oracle)
