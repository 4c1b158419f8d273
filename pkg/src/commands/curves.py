"""
`curves`: two-column data for plotting the theory results externally.
"""

import argparse
from enum import Enum
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from src.commands.arguments import (
    add_output_arguments,
    add_sampling_arguments,
    parse_ratio,
    parse_size,
)
from src.commands.output import emit, render
from src.errors import ContractViolation
from src.schemas.experiment import OutputFormat
from src.services.theory_service import (
    penalty_q,
    recursion_weights,
    recursive_fraction,
    skewed_cost_coefficient,
)


class Curve(str, Enum):
    PENALTY = "penalty"
    RECURSIVE_FRACTION = "recursive_fraction"
    SKEWED = "skewed"
    WEIGHTS = "weights"


DEFAULT_ALPHA = {
    Curve.PENALTY: Fraction(1),
    Curve.RECURSIVE_FRACTION: Fraction(1, 2),
    Curve.WEIGHTS: Fraction(1, 2),
}
DEFAULT_RANGE = {
    Curve.PENALTY: (0.0, 100.0, 1.0),
    Curve.RECURSIVE_FRACTION: (0.0, 100.0, 1.0),
    Curve.SKEWED: (0.01, 0.99, 0.01),
}


def grid(start: float, stop: float, step: float) -> np.ndarray:
    """Points start, start + step, ... up to and including stop."""
    if step <= 0 or stop < start:
        raise ContractViolation(f"empty grid [{start}, {stop}] with step {step}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 10)


def curve_points(
    curve: Curve,
    points: Sequence[float] = (),
    alpha: Optional[Fraction] = None,
    b: float = 0.0,
    n: int = 101,
    t: int = 1,
) -> List[Tuple[Any, Any]]:
    """
    (x, y) pairs of one curve.

    penalty and recursive_fraction run over t, skewed over the pivot quantile rho
    and weights over the subproblem size j of an n-element round.
    """
    ratio = DEFAULT_ALPHA.get(curve, Fraction(1, 2)) if alpha is None else alpha
    if curve is Curve.WEIGHTS:
        return list(enumerate(float(w) for w in recursion_weights(n, t, ratio)))
    if curve is Curve.SKEWED:
        return [(float(rho), skewed_cost_coefficient(float(rho), b)) for rho in points]
    ts = [int(round(x)) for x in points]
    if curve is Curve.PENALTY:
        return [(t_, penalty_q(t_, ratio)) for t_ in ts]
    return [(t_, float(recursive_fraction(t_, ratio))) for t_ in ts]


def cmd_curves(args: argparse.Namespace) -> int:
    curve = args.what
    x_name = {Curve.SKEWED: "rho", Curve.WEIGHTS: "j"}.get(curve, "t")
    points: Sequence[float] = ()
    if curve is not Curve.WEIGHTS:
        start, stop, step = DEFAULT_RANGE[curve]
        if args.range is not None:
            start, stop = args.range
        if args.step is not None:
            step = args.step
        points = grid(start, stop, step)
    rows = curve_points(curve, points, args.alpha, args.b or 0.0, args.n, args.t)
    emit(render([x_name, curve.value], rows, args.format), args.out)
    return 0


def register(subparsers: Any) -> None:
    parser = subparsers.add_parser("curves", help="Plot-ready curve data")
    parser.add_argument("what", type=Curve, choices=list(Curve), metavar="CURVE")
    parser.add_argument(
        "--range", type=float, nargs=2, metavar=("START", "STOP"), default=None
    )
    parser.add_argument("--step", type=float, default=None)
    parser.add_argument("--alpha", type=parse_ratio, default=None)
    parser.add_argument(
        "--b", type=float, default=None, help="Linear term of X for the skewed curve"
    )
    parser.add_argument(
        "--n", type=parse_size, default=101, help="Round size for the weights curve"
    )
    add_sampling_arguments(parser, multiple=False)
    add_output_arguments(parser, default_format=OutputFormat.TSV)
    parser.set_defaults(handler=cmd_curves)
