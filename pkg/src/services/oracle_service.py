"""
Oracle Service produces ground-truth average costs.

It solves the QuickXsort cost recurrence bottom-up (exact rationals for small
sizes, 80-bit floats beyond), evaluates the exact expected cost of Mergesort, and
averages the real implementation over all permutations of tiny inputs.
"""

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, partial
from typing import Any, Callable, List, Optional, Sequence

import numpy as np
from loguru import logger as log

from src.components.engine import BufferedSorter, Span
from src.components.heap_x import initialize_heap_x
from src.components.instrument import CountedElement, CountingComparator, make_elements
from src.config.settings import settings
from src.errors import ContractViolation
from src.pipelines.quickxsort.pipeline import (
    QuickXsortPipeline,
    initialize_buffered_sorter,
    initialize_quickxsort_pipeline,
)
from src.schemas.cost_model import Algorithm, Ratio, to_fraction
from src.schemas.sorting import SamplePolicy
from src.services.theory_service import cost_params, subproblem_size_pmf

ENUMERATION_CEILING = 9

Run = Callable[[Sequence[int]], int]


@dataclass(slots=True)
class RecurrenceTable:
    """
    Solution of the cost recurrence for sizes 0..N.

    `c`, `x` and `base` hold Fractions when `exact` is set, numpy longdoubles
    otherwise; `error_estimate` is then the largest relative gap to a float64
    shadow run.
    """

    c: List[Any]
    x: List[Any]
    base: List[Any]
    t: int
    alpha: Fraction
    exact: bool = True
    error_estimate: Optional[float] = None


def insertion_sort_avg(n: int) -> Fraction:
    """Average Insertionsort comparisons on a random permutation of size n."""
    return sum(
        (Fraction((i - 1) * (i + 2), 2 * i) for i in range(2, n + 1)), Fraction(0)
    )


def merge_cost_avg(p: int, q: int) -> Fraction:
    """Average comparisons to merge random sorted runs of sizes p and q."""
    return p + q - Fraction(p, q + 1) - Fraction(q, p + 1)


@lru_cache(maxsize=None)
def exact_mergesort_avg(n: int) -> Fraction:
    """Average comparisons of top-down Mergesort (ceil/floor split)."""
    if n < 2:
        return Fraction(0)
    p, q = (n + 1) // 2, n // 2
    return exact_mergesort_avg(p) + exact_mergesort_avg(q) + merge_cost_avg(p, q)


@lru_cache(maxsize=None)
def exact_bottom_up_mergesort_avg(n: int) -> Fraction:
    """
    Average comparisons of bottom-up Mergesort.

    The last merge joins the leading block of 2^(ceil(lg n) - 1) elements with the
    rest, and both parts are sorted as independent bottom-up runs.
    """
    if n < 2:
        return Fraction(0)
    head = 1 << ((n - 1).bit_length() - 1)
    return (
        exact_bottom_up_mergesort_avg(head)
        + exact_bottom_up_mergesort_avg(n - head)
        + merge_cost_avg(head, n - head)
    )


def _recursed_sizes(n: int, alpha: Fraction) -> np.ndarray:
    """Size of the recursed segment for every left size j1 in 0..n-1."""
    j1 = np.arange(n)
    j2 = n - 1 - j1
    # j <= (n-1)/(1+alpha) in integers
    p, q = alpha.numerator, alpha.denominator
    fits = (j1 * (p + q) <= (n - 1) * q) & (j2 * (p + q) <= (n - 1) * q)
    recurse_left = np.where(fits, j1 <= j2, j1 > j2)
    return np.where(recurse_left, j1, j2)


def toll_t(n: int, x_table: Sequence[Any], t: int, alpha: Ratio) -> Fraction:
    """
    Expected non-recursive cost of one round on n elements.

    Partitioning (n - k), sorting the sample, and the expected cost of X on the
    segment it receives.

    Raises:
        ContractViolation: If n < k.
    """
    ratio = to_fraction(alpha)
    k = 2 * t + 1
    pmf = subproblem_size_pmf(n, t)
    recursed = _recursed_sizes(n, ratio)
    expected_x = sum(
        (p * x_table[n - 1 - int(r)] for p, r in zip(pmf, recursed) if p),
        Fraction(0),
    )
    return (n - k) + insertion_sort_avg(k) + expected_x


def _solve_exact(
    N: int, x_table: Sequence[Any], base_table: Sequence[Any], t: int, alpha: Fraction
) -> List[Fraction]:
    c: List[Fraction] = []
    for n in range(N + 1):
        if n < len(base_table):
            c.append(Fraction(base_table[n]))
            continue
        pmf = subproblem_size_pmf(n, t)
        recursed = _recursed_sizes(n, alpha)
        total = toll_t(n, x_table, t, alpha)
        total += sum(
            (p * c[int(r)] for p, r in zip(pmf, recursed) if p), Fraction(0)
        )
        c.append(total)
    return c


def _pmf_float(m: int, a: int, dtype: Any) -> np.ndarray:
    """BetaBinomial(m, a, a) PMF by the ratio of consecutive terms."""
    i = np.arange(m, dtype=dtype)
    steps = np.arange(m, dtype=dtype)
    head = np.prod((a + steps) / (2 * a + steps))
    ratios = (m - i) * (a + i) / ((i + 1) * (a + m - i - 1))
    return np.asarray(head * np.concatenate(([1], np.cumprod(ratios))), dtype=dtype)


def _solve_float(
    N: int,
    x_table: Sequence[Any],
    base_table: Sequence[Any],
    t: int,
    alpha: Fraction,
    dtype: Any,
) -> np.ndarray:
    k = 2 * t + 1
    sample_cost = float(insertion_sort_avg(k))
    x = np.array([float(v) for v in x_table[:N]], dtype=dtype)
    c = np.zeros(N + 1, dtype=dtype)
    for n in range(N + 1):
        if n < len(base_table):
            c[n] = float(base_table[n])
            continue
        pmf = np.zeros(n, dtype=dtype)
        pmf[t : n - t] = _pmf_float(n - k, t + 1, dtype)
        recursed = _recursed_sizes(n, alpha)
        c[n] = (n - k) + sample_cost + np.dot(pmf, c[recursed] + x[n - 1 - recursed])
        if n % 1024 == 0:
            log.debug("Float recurrence reached n={}", n)
    return c


def solve_recurrence(
    N: int,
    x_table: Sequence[Any],
    base_table: Sequence[Any],
    t: int,
    alpha: Ratio,
    exact_limit: int = settings.oracle_exact_limit,
) -> RecurrenceTable:
    """
    Solve c(n) = toll(n) + E[c(recursed size)] for n = 0..N.

    Args:
        N: Largest size.
        x_table: Expected cost of X per size, covering 0..N-1.
        base_table: Expected base-case cost for sizes 0..B, B >= k - 1; sizes up
            to B are taken from it.
        t: Sampling parameter.
        alpha: Buffer ratio of X.
        exact_limit: Largest N solved in exact rationals.

    Returns:
        RecurrenceTable with c[0..N].

    Raises:
        ContractViolation: If the base table stops short of k - 1 or the X table
            is too short.
    """
    ratio = to_fraction(alpha)
    k = 2 * t + 1
    if len(base_table) < k:
        raise ContractViolation(
            f"base table covers sizes < {len(base_table)}, need every size <= {k - 1}"
        )
    if len(x_table) < N:
        raise ContractViolation(f"x table covers sizes < {len(x_table)}, need {N}")

    if N <= exact_limit:
        c = _solve_exact(N, x_table, base_table, t, ratio)
        return RecurrenceTable(
            c=c, x=list(x_table[:N]), base=list(base_table), t=t, alpha=ratio
        )

    log.warning("N={} exceeds the exact limit {}; using 80-bit floats", N, exact_limit)
    wide = _solve_float(N, x_table, base_table, t, ratio, np.longdouble)
    shadow = _solve_float(N, x_table, base_table, t, ratio, np.float64)
    scale = np.maximum(np.abs(wide), 1)
    error = float(np.max(np.abs(wide - shadow) / scale))
    return RecurrenceTable(
        c=list(wide),
        x=[np.longdouble(float(v)) for v in x_table[:N]],
        base=list(base_table),
        t=t,
        alpha=ratio,
        exact=False,
        error_estimate=error,
    )


def _block_total(n: int, run: Run, first: int) -> int:
    rest = [v for v in range(n) if v != first]
    return sum(run([first, *perm]) for perm in itertools.permutations(rest))


def enumerate_average(n: int, run: Run, workers: int = 1) -> Fraction:
    """
    Exact average of `run` over all n! permutations of 0..n-1.

    With workers > 1 the permutations are split into blocks by their first
    element; `run` must then be picklable.
    """
    if n < 0 or n > ENUMERATION_CEILING:
        raise ContractViolation(
            f"enumeration supports 0 <= n <= {ENUMERATION_CEILING}, got {n}"
        )
    if n == 0:
        return Fraction(run([]))
    block = partial(_block_total, n, run)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(block, range(n)))
    else:
        total = sum(block(first) for first in range(n))
    return Fraction(total, math.factorial(n))


@lru_cache(maxsize=None)
def _oracle_pipeline(
    algorithm: Algorithm, t: int, base_threshold: int
) -> QuickXsortPipeline:
    return initialize_quickxsort_pipeline(
        algorithm,
        t=t,
        sample_policy=SamplePolicy.DETERMINISTIC_PREFIX,
        base_threshold=base_threshold,
    )


def _quickxsort_cost(
    algorithm: Algorithm, t: int, base_threshold: int, perm: Sequence[int]
) -> int:
    _, stats = _oracle_pipeline(algorithm, t, base_threshold).sort_keys(perm)
    return stats.comparisons


def exhaustive_avg(
    n: int,
    algorithm: Algorithm,
    t: int,
    base_threshold: int = 0,
    workers: int = 1,
) -> Fraction:
    """
    Exact average comparisons of the implemented QuickXsort over all inputs of size n.

    Sampling is DeterministicPrefix so each run is a function of its input.

    Raises:
        ContractViolation: If n > 9.
    """
    return enumerate_average(
        n, partial(_quickxsort_cost, algorithm, t, base_threshold), workers
    )


def _x_layout(algorithm: Algorithm, perm: Sequence[int]) -> List[CountedElement]:
    """Buffer of smaller keys on the left, then the segment."""
    m = len(perm)
    width = m if algorithm is Algorithm.QUICK_HEAPSORT else (m + 1) // 2
    return make_elements([-1 - i for i in range(width)] + list(perm))


@lru_cache(maxsize=None)
def _oracle_x(algorithm: Algorithm, accounting: str) -> BufferedSorter:
    return initialize_buffered_sorter(algorithm, accounting)


def _x_cost(algorithm: Algorithm, accounting: str, perm: Sequence[int]) -> int:
    x = _oracle_x(algorithm, accounting)
    array = _x_layout(algorithm, perm)
    width = len(array) - len(perm)
    return x.sort(array, Span(width, len(array)), Span(0, width), CountingComparator())


def exhaustive_x_avg(
    m: int,
    algorithm: Algorithm,
    accounting: str = settings.heap_sentinel_accounting,
    workers: int = 1,
) -> Fraction:
    """Exact average cost of the X behind `algorithm` alone on m elements."""
    return enumerate_average(m, partial(_x_cost, algorithm, accounting), workers)


def empirical_heapsort_avg(
    m: int,
    trials: int = settings.heap_empirical_trials,
    seed: int = settings.default_seed,
    accounting: str = settings.heap_sentinel_accounting,
) -> float:
    """Mean cost of external Heapsort alone over random inputs of size m."""
    rng = np.random.default_rng([seed, m])
    counts = np.empty(trials, dtype=np.int64)
    x = initialize_heap_x(accounting)
    for trial in range(trials):
        array = make_elements([-1 - i for i in range(m)] + rng.permutation(m).tolist())
        counts[trial] = x.sort(array, Span(m, 2 * m), Span(0, m), CountingComparator())
    return float(np.mean(counts))


def x_table_for(
    algorithm: Algorithm,
    N: int,
    heap_enumeration_limit: int = settings.heap_enumeration_limit,
    heap_trials: int = settings.heap_empirical_trials,
) -> List[Any]:
    """
    Expected cost of X per size 0..N-1.

    Mergesort costs are exact. Heapsort costs are enumerated up to
    `heap_enumeration_limit` and estimated empirically above it.
    """
    if algorithm is Algorithm.QUICK_MERGESORT_BU:
        return [exact_bottom_up_mergesort_avg(m) for m in range(N)]
    if algorithm is not Algorithm.QUICK_HEAPSORT:
        return [exact_mergesort_avg(m) for m in range(N)]
    table: List[Any] = []
    for m in range(N):
        if m <= heap_enumeration_limit:
            table.append(exhaustive_x_avg(m, algorithm))
        else:
            if m == heap_enumeration_limit + 1:
                log.warning(
                    "Heapsort costs above size {} are empirical means",
                    heap_enumeration_limit,
                )
            table.append(empirical_heapsort_avg(m, heap_trials))
    return table


def base_table_for(t: int, base_threshold: int = 0) -> List[Fraction]:
    """Insertionsort averages for every size the engine hands to the base case."""
    limit = max(base_threshold, 2 * t)
    return [insertion_sort_avg(m) for m in range(limit + 1)]


def recurrence_for(
    algorithm: Algorithm,
    N: int,
    t: int,
    base_threshold: int = 0,
    **x_options: Any,
) -> RecurrenceTable:
    """Solve the recurrence with the tables matching the implemented algorithm."""
    log.debug("Solving recurrence for {} up to N={} with t={}", algorithm.value, N, t)
    return solve_recurrence(
        N,
        x_table_for(algorithm, N, **x_options),
        base_table_for(t, base_threshold),
        t,
        cost_params(algorithm, t).alpha,
    )
