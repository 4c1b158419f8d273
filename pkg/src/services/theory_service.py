"""
Theory Service evaluates the closed-form cost results for QuickXsort.

Beta functions, incomplete beta integrals, beta-binomial probabilities and the
expected subproblem share H are computed in exact rationals; only the final
predictions are turned into floats.
"""

import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
from scipy import integrate, stats

from src.components.engine import assign_sides
from src.errors import ContractViolation
from src.schemas.cost_model import (
    Algorithm,
    CostModelParams,
    Ratio,
    XKind,
    to_fraction,
)
from src.schemas.experiment import PublishedMeasurement
from src.schemas.sorting import Side

LN2 = math.log(2)

# Observed QuickHeapsort averages with the published error (estimate minus
# observed) of the transfer theorem and of the two earlier upper bounds. The
# CC bound covers k = 1 only.
_PUBLISHED_ROWS: Tuple[Tuple[str, int, int, int, int, Optional[int], int], ...] = (
    ("CC", 10**2, 1, 806, 67, 158, 156),
    ("CC", 10**2, 3, 714, 98, None, 168),
    ("CC", 10**5, 1, 1_869_769, -600, 90_795, 88_795),
    ("CC", 10**5, 3, 1_799_240, 9_165, None, 79_324),
    ("CC", 10**6, 1, 21_891_874, 121_748, 1_035_695, 1_015_695),
    ("CC", 10**6, 3, 21_355_988, 49_994, None, 751_581),
    ("DW", 10**4, 1, 152_573, 1_125, 10_264, 10_064),
    ("DW", 10**4, 3, 146_485, 1_136, None, 8_152),
    ("DW", 10**6, 1, 21_975_912, 37_710, 951_657, 931_657),
    ("DW", 10**6, 3, 21_327_478, 78_504, None, 780_091),
)

PUBLISHED_MEASUREMENTS: Tuple[PublishedMeasurement, ...] = tuple(
    PublishedMeasurement(
        source=source,
        n=n,
        k=k,
        observed=observed,
        published_delta=delta,
        cc_bound_delta=cc,
        dw_bound_delta=dw,
    )
    for source, n, k, observed, delta, cc, dw in _PUBLISHED_ROWS
)

# Linear terms of the average cost of each X.
X_LINEAR_TERMS = {
    XKind.MERGE_TD: -1.24,
    XKind.MERGE_BU: -0.26,
    XKind.EXT_HEAP: 0.967444,
}


@lru_cache(maxsize=None)
def harmonic(n: int) -> Fraction:
    """n-th harmonic number; harmonic(0) = 0."""
    if n < 0:
        raise ContractViolation(f"harmonic number of negative n={n}")
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def beta(a: int, b: int) -> Fraction:
    """Beta function at positive integers: (a-1)!(b-1)!/(a+b-1)!."""
    if a < 1 or b < 1:
        raise ContractViolation(f"beta needs positive shapes, got ({a}, {b})")
    return Fraction(
        math.factorial(a - 1) * math.factorial(b - 1), math.factorial(a + b - 1)
    )


def reg_incomplete_beta(x: Ratio, y: Ratio, a: int, b: int) -> Fraction:
    """
    Regularized incomplete beta integral I_{x,y}(a, b) for integer shapes.

    (1 - z)^(b-1) is expanded binomially and integrated term by term.

    Raises:
        ContractViolation: Unless 0 <= x <= y <= 1 and a, b are positive.
    """
    lo, hi = to_fraction(x), to_fraction(y)
    if not 0 <= lo <= hi <= 1:
        raise ContractViolation(f"need 0 <= x <= y <= 1, got x={lo}, y={hi}")
    if lo == hi:
        return Fraction(0)
    total = Fraction(0)
    for j in range(b):
        power = a + j
        term = Fraction(math.comb(b - 1, j), power) * (hi**power - lo**power)
        total += -term if j % 2 else term
    return total / beta(a, b)


@lru_cache(maxsize=None)
def _h_cached(t: int, alpha: Fraction) -> Fraction:
    low = reg_incomplete_beta(0, alpha / (1 + alpha), t + 2, t + 1)
    high = reg_incomplete_beta(Fraction(1, 2), 1 / (1 + alpha), t + 2, t + 1)
    return low + high


def H_value(t: int, alpha: Ratio) -> Fraction:
    """Expected relative size of the segment sorted by X."""
    ratio = to_fraction(alpha)
    if t < 0 or not 0 < ratio <= 1:
        raise ContractViolation(
            f"need t >= 0 and alpha in (0, 1], got t={t}, alpha={ratio}"
        )
    return _h_cached(t, ratio)


def _entropy_gap(t: int) -> float:
    k = 2 * t + 1
    return float(harmonic(k + 1) - harmonic(t + 1)) / LN2


def penalty_q(t: int, alpha: Ratio) -> float:
    """Linear-term penalty QuickXsort adds on top of X (leading coefficient 1)."""
    h = float(H_value(t, alpha))
    return 1 / h - _entropy_gap(t) / h


def linear_coefficient(params: CostModelParams) -> float:
    """Linear coefficient of the predicted total cost."""
    h = float(H_value(params.t, params.alpha))
    return 1 / h - params.a * _entropy_gap(params.t) / h + params.b


def leading_term(n: int, a: float = 1.0) -> float:
    return a * n * math.log2(n) if n > 0 else 0.0


def predict_total(n: int, params: CostModelParams) -> float:
    """Predicted average comparisons of QuickXsort on n elements."""
    return leading_term(n, params.a) + linear_coefficient(params) * n


def x_model(kind: XKind, n: int) -> float:
    """Closed-form upper bound on the average cost of X on n elements."""
    value = n * math.log2(n) + X_LINEAR_TERMS[kind] * n
    return value + 2 if kind is XKind.MERGE_TD else value


def heap_sortdown_model(n: int) -> int:
    """Sort-down cost of external Heapsort: n(L - 1) + 2(n - 2^L), L = floor(lg n)."""
    level = n.bit_length() - 1
    return n * (level - 1) + 2 * (n - (1 << level))


def cost_params(algorithm: Algorithm, t: int) -> CostModelParams:
    """Cost description of the X behind each algorithm."""
    half = Fraction(1, 2)
    if algorithm is Algorithm.QUICK_MERGESORT_TD:
        return CostModelParams(b=X_LINEAR_TERMS[XKind.MERGE_TD], alpha=half, t=t)
    if algorithm is Algorithm.QUICK_MERGESORT_BU:
        return CostModelParams(b=X_LINEAR_TERMS[XKind.MERGE_BU], alpha=half, t=t)
    if algorithm is Algorithm.QUICK_MERGESORT_ALPHA1:
        return CostModelParams(b=X_LINEAR_TERMS[XKind.MERGE_TD], alpha=1, t=t)
    return CostModelParams(b=X_LINEAR_TERMS[XKind.EXT_HEAP], alpha=1, t=t)


def _rising(x: int, n: int) -> int:
    result = 1
    for i in range(n):
        result *= x + i
    return result


def beta_binomial_pmf(n_trials: int, i: int, a: int, b: int) -> Fraction:
    """P{I = i} for I ~ BetaBinomial(n_trials, a, b), exact."""
    if i < 0 or i > n_trials:
        return Fraction(0)
    return Fraction(
        math.comb(n_trials, i) * _rising(a, i) * _rising(b, n_trials - i),
        _rising(a + b, n_trials),
    )


def beta_binomial_vector(n_trials: int, a: int, b: int) -> List[Fraction]:
    """The whole exact PMF, built by the ratio of consecutive terms."""
    p = Fraction(_rising(b, n_trials), _rising(a + b, n_trials))
    pmf = [p]
    for i in range(n_trials):
        p = p * Fraction((n_trials - i) * (a + i), (i + 1) * (b + n_trials - i - 1))
        pmf.append(p)
    return pmf


@lru_cache(maxsize=4096)
def _subproblem_cached(n: int, t: int) -> Tuple[Fraction, ...]:
    k = 2 * t + 1
    pmf = beta_binomial_vector(n - k, t + 1, t + 1)
    return tuple([Fraction(0)] * t + pmf + [Fraction(0)] * t)


def subproblem_size_pmf(n: int, t: int) -> List[Fraction]:
    """
    Distribution of the left segment size J1 = t + I1 over j in 0..n-1.

    Raises:
        ContractViolation: If n < k.
    """
    if n < 2 * t + 1:
        raise ContractViolation(f"n={n} is smaller than the sample size {2 * t + 1}")
    return list(_subproblem_cached(n, t))


def recursion_weights(n: int, t: int, alpha: Ratio) -> List[Fraction]:
    """
    Weight of c(j) in the cost recurrence, for j in 0..n-1.

    A size j is recursed on either as the left segment or as the right one; the
    weights sum to one.
    """
    ratio = to_fraction(alpha)
    pmf = subproblem_size_pmf(n, t)
    weights = [Fraction(0)] * n
    for j1, p in enumerate(pmf):
        if not p:
            continue
        j2 = n - 1 - j1
        _, recurse = assign_sides(j1, j2, ratio)
        weights[j1 if recurse is Side.LEFT else j2] += p
    return weights


def local_limit_error(n: int, t: int) -> float:
    """
    Sup distance between the scaled beta-binomial PMF and the Beta(t+1, t+1) density.

    Evaluated at z = (i + 1/2)/n for i in 0..n-1, comparing n P{I = floor(z(n+1))}
    with the density at z.
    """
    z = (np.arange(n) + 0.5) / n
    points = np.floor(z * (n + 1))
    scaled = n * stats.betabinom.pmf(points, n, t + 1, t + 1)
    density = stats.beta.pdf(z, t + 1, t + 1)
    return float(np.max(np.abs(scaled - density)))


def recursive_fraction(t: int, alpha: Ratio) -> Fraction:
    """Expected relative size of the recursed segment, 1 - H."""
    return 1 - H_value(t, alpha)


def expected_fraction_in_range(x: Ratio, y: Ratio, a: int, b: int) -> Fraction:
    """Limit of E[[xn <= J <= yn] J/n] for J/n ~ Beta(a, b)."""
    return Fraction(a, a + b) * reg_incomplete_beta(x, y, a + 1, b)


def expected_fraction_log(a: int, b: int) -> Fraction:
    """Limit of E[(J/n) ln(J/n)] for J/n ~ Beta(a, b)."""
    return Fraction(a, a + b) * (harmonic(a) - harmonic(a + b))


def _entropy(x: float) -> float:
    return x * math.log2(x) + (1 - x) * math.log2(1 - x)


def skewed_cost_coefficient(rho: float, b: float) -> float:
    """
    Linear coefficient when the pivot is always the exact rho-quantile.

    Raises:
        ContractViolation: If rho is not in (0, 1).
    """
    if not 0 < rho < 1:
        raise ContractViolation(f"rho must lie in (0, 1), got {rho}")
    gain = 1 + _entropy(rho)
    if 1 / 3 < rho < 1 / 2 or 2 / 3 < rho < 1:
        return gain / (1 - rho) + b
    return gain / rho + b


def shape_w(z: float, t: int, alpha: Ratio) -> float:
    """
    Density of the relative size of the recursed segment at z.

    Twice the Beta(t+1, t+1) density on the region
    (alpha/(1+alpha), 1/2) u (1/(1+alpha), 1), zero elsewhere.
    """
    ratio = float(to_fraction(alpha))
    inside = ratio / (1 + ratio) < z < 0.5 or 1 / (1 + ratio) < z < 1
    if not inside:
        return 0.0
    return 2 * z**t * (1 - z) ** t / float(beta(t + 1, t + 1))


def shape_mean(t: int, alpha: Ratio) -> float:
    """Numerical integral of z w(z) over [0, 1], which equals 1 - H."""
    ratio = float(to_fraction(alpha))
    breaks = sorted({ratio / (1 + ratio), 0.5, 1 / (1 + ratio)})
    value, _ = integrate.quad(
        lambda z: z * shape_w(z, t, alpha), 0.0, 1.0, points=breaks, limit=200
    )
    return float(value)
