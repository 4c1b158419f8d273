"""
`bench`: seeded empirical comparison counts of the implemented algorithms.
"""

import argparse
from typing import Any

from src.commands.arguments import (
    add_algorithm_argument,
    add_output_arguments,
    add_sampling_arguments,
    parse_size,
)
from src.commands.output import emit, render
from src.config.settings import settings
from src.schemas.experiment import BenchRow, ExperimentSpec
from src.services.benchmark_service import BenchmarkService

HEADERS = list(BenchRow.model_fields)


def cmd_bench(args: argparse.Namespace) -> int:
    spec = ExperimentSpec(
        algorithm=args.alg,
        n_list=args.n,
        t_list=args.t,
        trials=args.trials,
        seed=args.seed,
        output_format=args.format,
    )
    rows = BenchmarkService(workers=args.workers).bench(spec)
    table = [[getattr(row, field) for field in HEADERS] for row in rows]
    emit(render(HEADERS, table, spec.output_format), args.out)
    return 0


def register(subparsers: Any) -> None:
    parser = subparsers.add_parser(
        "bench", help="Average comparisons over seeded random permutations"
    )
    add_algorithm_argument(parser)
    parser.add_argument("--n", type=parse_size, nargs="+", required=True)
    add_sampling_arguments(parser, multiple=True)
    parser.add_argument("--trials", type=int, default=settings.default_trials)
    parser.add_argument("--seed", type=int, default=settings.default_seed)
    parser.add_argument(
        "--workers",
        type=int,
        default=settings.bench_workers,
        help="Worker processes (default: physical CPU count)",
    )
    add_output_arguments(parser)
    parser.set_defaults(handler=cmd_bench)
