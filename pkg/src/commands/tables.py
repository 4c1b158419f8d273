"""
`table1` and `table2`: the penalty table and the QuickHeapsort estimate table.
"""

import argparse
from fractions import Fraction
from typing import Any, List, Sequence

from src.commands.arguments import add_output_arguments
from src.commands.output import emit, render
from src.schemas.cost_model import Algorithm
from src.services.theory_service import (
    PUBLISHED_MEASUREMENTS,
    cost_params,
    penalty_q,
    predict_total,
)

PENALTY_TS = (0, 1, 2, 3, 10)
PENALTY_ALPHAS = (Fraction(1), Fraction(1, 2))
LIMIT_CELL = "0 (t->inf)"


def penalty_rows(
    ts: Sequence[int] = PENALTY_TS, alphas: Sequence[Fraction] = PENALTY_ALPHAS
) -> List[List[Any]]:
    """One row per alpha: q(t, alpha) for each t, then the limit for t -> inf."""
    return [
        [str(alpha)] + [f"{penalty_q(t, alpha):.4f}" for t in ts] + [LIMIT_CELL]
        for alpha in alphas
    ]


def cmd_table1(args: argparse.Namespace) -> int:
    headers = ["alpha"] + [f"t={t}" for t in PENALTY_TS] + ["t->inf"]
    emit(render(headers, penalty_rows(), args.format), args.out)
    return 0


def estimate_rows() -> List[List[Any]]:
    """
    Published QuickHeapsort averages next to the transfer-theorem estimate.

    The last two columns carry the published error of the earlier CC and DW
    bounds; the CC cell is empty where that bound does not apply.
    """
    rows: List[List[Any]] = []
    for m in PUBLISHED_MEASUREMENTS:
        t = (m.k - 1) // 2
        predicted = round(predict_total(m.n, cost_params(Algorithm.QUICK_HEAPSORT, t)))
        rows.append(
            [
                m.source,
                m.n,
                m.k,
                m.observed,
                predicted,
                predicted - m.observed,
                m.published_delta,
                m.cc_bound_delta,
                m.dw_bound_delta,
            ]
        )
    return rows


def cmd_table2(args: argparse.Namespace) -> int:
    headers = [
        "source",
        "n",
        "k",
        "observed",
        "predicted",
        "delta",
        "published_delta",
        "cc_delta",
        "dw_delta",
    ]
    emit(render(headers, estimate_rows(), args.format), args.out)
    return 0


def register(subparsers: Any) -> None:
    table1 = subparsers.add_parser("table1", help="QuickXsort penalty q(t, alpha)")
    add_output_arguments(table1)
    table1.set_defaults(handler=cmd_table1)

    table2 = subparsers.add_parser(
        "table2", help="QuickHeapsort estimates against published measurements"
    )
    add_output_arguments(table2)
    table2.set_defaults(handler=cmd_table2)
