"""
`predict`: closed-form average cost of QuickXsort for given sizes.
"""

import argparse
from typing import Any, List, Optional

from src.commands.arguments import (
    add_algorithm_argument,
    add_output_arguments,
    add_sampling_arguments,
    parse_ratio,
    parse_size,
)
from src.commands.output import emit, render
from src.schemas.cost_model import Algorithm
from src.schemas.experiment import PredictionRow
from src.services.theory_service import (
    cost_params,
    leading_term,
    linear_coefficient,
    predict_total,
)

# Predictions are compared against exact counts in the millions.
PREDICTION_DIGITS = 12

HEADERS = ["algorithm", "n", "t", "predicted", "leading_term", "linear_coeff"]


def prediction_rows(
    algorithm: Algorithm,
    n_list: List[int],
    t_list: List[int],
    alpha: Optional[Any] = None,
    b: Optional[float] = None,
) -> List[PredictionRow]:
    """
    One prediction per (n, t), optionally with alpha or b overriding the X defaults.
    """
    rows: List[PredictionRow] = []
    for n in n_list:
        for t in t_list:
            params = cost_params(algorithm, t)
            overrides = {
                key: value
                for key, value in (("alpha", alpha), ("b", b))
                if value is not None
            }
            if overrides:
                params = params.model_validate({**params.model_dump(), **overrides})
            rows.append(
                PredictionRow(
                    algorithm=algorithm,
                    n=n,
                    t=t,
                    predicted=predict_total(n, params),
                    leading_term=leading_term(n, params.a),
                    linear_coeff=linear_coefficient(params),
                )
            )
    return rows


def cmd_predict(args: argparse.Namespace) -> int:
    rows = prediction_rows(args.alg, args.n, args.t, args.alpha, args.b)
    table = [
        [r.algorithm, r.n, r.t, r.predicted, r.leading_term, r.linear_coeff]
        for r in rows
    ]
    emit(render(HEADERS, table, args.format, PREDICTION_DIGITS), args.out)
    return 0


def register(subparsers: Any) -> None:
    parser = subparsers.add_parser(
        "predict", help="Predicted average comparisons from the transfer theorem"
    )
    add_algorithm_argument(parser)
    parser.add_argument("--n", type=parse_size, nargs="+", required=True)
    add_sampling_arguments(parser, multiple=True)
    parser.add_argument(
        "--alpha", type=parse_ratio, default=None, help="Override the buffer ratio"
    )
    parser.add_argument(
        "--b", type=float, default=None, help="Override the linear term of X"
    )
    add_output_arguments(parser)
    parser.set_defaults(handler=cmd_predict)
