"""
The QuickXsort driver.

Each round samples a pivot, partitions the current segment, lets the buffered
sorter X sort one side using the other side as its buffer, and continues with the
other side. Small segments fall through to Insertionsort.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import List, MutableSequence, Optional, Protocol, Tuple

import numpy as np
from loguru import logger as log

from src.components.instrument import (
    Channel,
    CountedElement,
    CountingComparator,
    is_sorted,
    snapshot,
)
from src.config.settings import settings
from src.errors import ContractViolation
from src.schemas.cost_model import Ratio, to_fraction
from src.schemas.sorting import (
    PartitionOutcome,
    RunStats,
    SamplePolicy,
    SamplingScheme,
    Side,
)

Elements = MutableSequence[CountedElement]


@dataclass(frozen=True, slots=True)
class Span:
    """Half-open index range [lo, hi) of an array."""

    lo: int
    hi: int

    def __len__(self) -> int:
        return self.hi - self.lo

    def overlaps(self, other: "Span") -> bool:
        return self.lo < other.hi and other.lo < self.hi and len(self) > 0 < len(other)


class BufferedSorter(Protocol):
    """
    A sorter X that sorts `segment` using `buffer` as scratch space.

    The buffer holds at least floor(alpha * len(segment)) elements, is touched only
    by swaps and ends up holding the same elements in some order.
    """

    alpha: Fraction

    def sort(
        self,
        array: Elements,
        segment: Span,
        buffer: Span,
        comparator: CountingComparator,
    ) -> int: ...


def insertion_sort(
    array: Elements, lo: int, hi: int, comparator: CountingComparator
) -> int:
    """
    Sort `array[lo:hi]` by swap-based Insertionsort.

    Returns:
        Comparisons spent; sorted input of size n costs n - 1.
    """
    comparisons = 0
    less = comparator.less
    for i in range(lo + 1, hi):
        j = i
        while j > lo:
            comparisons += 1
            if not less(array[j], array[j - 1]):
                break
            array[j], array[j - 1] = array[j - 1], array[j]
            j -= 1
    return comparisons


def select_pivot(
    array: Elements,
    segment: Span,
    scheme: SamplingScheme,
    rng: Optional[np.random.Generator],
    comparator: CountingComparator,
) -> Tuple[int, int]:
    """
    Choose the median of a k-element sample as pivot.

    The sample is gathered at the front of the segment and sorted by Insertionsort.
    The t smaller sample elements stay at the left end, the pivot sits right after
    them and the t larger ones are moved to the right end of the segment.

    Args:
        array: The array being sorted.
        segment: Segment to sample from.
        scheme: Sampling parameters.
        rng: Random source for PseudoRandomPositions; unused for DeterministicPrefix.
        comparator: Comparator booking the sample comparisons.

    Returns:
        (pivot index, comparisons spent sorting the sample).

    Raises:
        ContractViolation: If the segment is shorter than k.
    """
    t, k = scheme.t, scheme.k
    lo, hi = segment.lo, segment.hi
    if hi - lo < k:
        raise ContractViolation(f"segment of size {hi - lo} is shorter than k={k}")

    if scheme.sample_policy is SamplePolicy.PSEUDO_RANDOM:
        if rng is None:
            raise ContractViolation("PseudoRandomPositions sampling needs an rng")
        for i in range(k):
            r = int(rng.integers(lo + i, hi))
            array[lo + i], array[r] = array[r], array[lo + i]

    comparisons = insertion_sort(array, lo, lo + k, comparator)

    # Reverse order keeps the block move correct when source and target overlap.
    for i in range(t - 1, -1, -1):
        src, dst = lo + t + 1 + i, hi - t + i
        array[src], array[dst] = array[dst], array[src]
    return lo + t, comparisons


def partition_around(
    array: Elements,
    segment: Span,
    pivot_index: int,
    t: int,
    comparator: CountingComparator,
) -> PartitionOutcome:
    """
    Partition the n - k non-sample elements around the pivot left by `select_pivot`.

    Every non-sample element is compared with the pivot exactly once. Afterwards the
    segment reads [below-pivot | pivot | above-pivot]. Elements equal to the pivot
    may land on either side.

    Returns:
        PartitionOutcome with sizes and pivot position; sides are not yet assigned.
    """
    lo, hi = segment.lo, segment.hi
    less = comparator.less
    pivot = array[pivot_index]
    i, j = lo + t + 1, hi - t - 1
    comparisons = 0
    while True:
        while i <= j:
            comparisons += 1
            if not less(array[i], pivot):
                break
            i += 1
        while j > i:
            comparisons += 1
            if not less(pivot, array[j]):
                break
            j -= 1
        if j <= i:
            break
        array[i], array[j] = array[j], array[i]
        i += 1
        j -= 1

    pivot_pos = i - 1
    array[pivot_index], array[pivot_pos] = array[pivot_pos], array[pivot_index]
    j1 = pivot_pos - lo
    return PartitionOutcome(
        size=hi - lo,
        j1=j1,
        j2=hi - lo - 1 - j1,
        pivot_pos=pivot_pos,
        partition_comparisons=comparisons,
    )


def assign_sides(j1: int, j2: int, alpha: Ratio) -> Tuple[Side, Side]:
    """
    Decide which segment X sorts and which one is recursed on.

    If both segments fit X's buffer requirement, i.e. both are at most
    (n - 1) / (1 + alpha), X sorts the larger one (on a tie the right one).
    Otherwise X sorts the smaller one.

    Returns:
        (x_side, recurse_side).
    """
    ratio = to_fraction(alpha)
    if not 0 < ratio <= 1:
        raise ContractViolation(f"alpha must lie in (0, 1], got {ratio}")
    limit = Fraction(j1 + j2) / (1 + ratio)
    if j1 <= limit and j2 <= limit:
        x_side = Side.LEFT if j1 > j2 else Side.RIGHT
    else:
        x_side = Side.LEFT if j1 < j2 else Side.RIGHT
    return x_side, x_side.other


def effective_base_threshold(k: int, base_threshold: Optional[int]) -> int:
    """Largest segment size handed to Insertionsort."""
    if base_threshold is None:
        base_threshold = max(k, settings.base_threshold)
    return max(base_threshold, k - 1)


def quickxsort(
    array: Elements,
    scheme: SamplingScheme,
    x: BufferedSorter,
    base_threshold: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
    comparator: Optional[CountingComparator] = None,
    audit: bool = False,
) -> RunStats:
    """
    Sort `array` in place by QuickXsort.

    Args:
        array: Elements to sort; counts are exact for pairwise distinct keys.
        scheme: Pivot sampling scheme.
        x: Buffered sorter used for one side of every round.
        base_threshold: Segments of at most max(base_threshold, k - 1) elements go to
            Insertionsort. Defaults to max(k, settings.base_threshold).
        rng: Random source; built from the scheme's seed when omitted.
        comparator: Comparator to book onto; a fresh one when omitted.
        audit: Re-check the n - k partition count, buffer size and buffer contents
            of every round.

    Returns:
        RunStats with the exact comparison tally.

    Raises:
        ContractViolation: If X is handed too small a buffer, or an audit check fails.
    """
    comparator = comparator or CountingComparator()
    if rng is None and scheme.sample_policy is SamplePolicy.PSEUDO_RANDOM:
        rng = scheme.make_rng()
    k = scheme.k
    limit = effective_base_threshold(k, base_threshold)
    rounds: List[PartitionOutcome] = []

    lo, hi = 0, len(array)
    while hi - lo > limit:
        segment = Span(lo, hi)
        with comparator.channel(Channel.SAMPLE):
            pivot_index, sample_comparisons = select_pivot(
                array, segment, scheme, rng, comparator
            )
        with comparator.channel(Channel.PARTITION):
            outcome = partition_around(
                array, segment, pivot_index, scheme.t, comparator
            )
        if audit and outcome.partition_comparisons != outcome.size - k:
            raise ContractViolation(
                f"round of size {outcome.size} spent {outcome.partition_comparisons} "
                f"partition comparisons, expected {outcome.size - k}"
            )

        x_side, recurse_side = assign_sides(outcome.j1, outcome.j2, x.alpha)
        left = Span(lo, outcome.pivot_pos)
        right = Span(outcome.pivot_pos + 1, hi)
        x_span, buffer = (left, right) if x_side is Side.LEFT else (right, left)
        if len(buffer) < floor(x.alpha * len(x_span)):
            raise ContractViolation(
                f"buffer of {len(buffer)} elements is too small for X on {len(x_span)}"
            )

        before = snapshot(array[buffer.lo : buffer.hi]) if audit else None
        with comparator.channel(Channel.X):
            x_comparisons = x.sort(array, x_span, buffer, comparator)
        if before is not None:
            if snapshot(array[buffer.lo : buffer.hi]).ids != before.ids:
                raise ContractViolation("X changed the contents of its buffer")
            if not is_sorted(array, x_span.lo, x_span.hi):
                raise ContractViolation("X left its segment unsorted")

        rounds.append(
            outcome.model_copy(
                update={
                    "x_side": x_side,
                    "recurse_side": recurse_side,
                    "sample_comparisons": sample_comparisons,
                    "x_comparisons": x_comparisons,
                }
            )
        )
        log.trace(
            "Round {}: n={} j1={} j2={} x_side={}",
            len(rounds),
            outcome.size,
            outcome.j1,
            outcome.j2,
            x_side.value,
        )
        next_span = left if recurse_side is Side.LEFT else right
        lo, hi = next_span.lo, next_span.hi

    with comparator.channel(Channel.BASE):
        insertion_sort(array, lo, hi, comparator)

    return RunStats(
        comparisons=comparator.total,
        sample_comparisons=comparator.count(Channel.SAMPLE),
        partition_comparisons=comparator.count(Channel.PARTITION),
        x_comparisons=comparator.count(Channel.X),
        base_case_comparisons=comparator.count(Channel.BASE),
        max_recursion_depth=len(rounds),
        rounds=rounds,
    )
