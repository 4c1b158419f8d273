"""
Mergesort as the buffered sorter X.

Merging moves the shorter run into the buffer by swaps and merges it back against
the other run, so the buffer only has to hold half of the segment (alpha = 1/2).
Buffer elements are never compared; they only travel through the holes left by
the moved run.
"""

from fractions import Fraction
from math import floor
from typing import Callable

from src.components.engine import Elements, Span
from src.components.instrument import CountedElement, CountingComparator
from src.errors import ContractViolation
from src.schemas.cost_model import AlphaMode, MergeVariant, MergeXConfig

Less = Callable[[CountedElement, CountedElement], bool]


def _merge(a: Elements, lo: int, mid: int, hi: int, buf: int, less: Less) -> int:
    """Merge a[lo:mid] and a[mid:hi] using a[buf:] as swap space."""
    n1, n2 = mid - lo, hi - mid
    comparisons = 0
    if n1 <= n2:
        for i in range(n1):
            a[lo + i], a[buf + i] = a[buf + i], a[lo + i]
        i1, e1, i2, out = buf, buf + n1, mid, lo
        while i1 < e1 and i2 < hi:
            comparisons += 1
            if less(a[i2], a[i1]):
                a[out], a[i2] = a[i2], a[out]
                i2 += 1
            else:
                a[out], a[i1] = a[i1], a[out]
                i1 += 1
            out += 1
        while i1 < e1:
            a[out], a[i1] = a[i1], a[out]
            i1 += 1
            out += 1
    else:
        for i in range(n2):
            a[mid + i], a[buf + i] = a[buf + i], a[mid + i]
        i1, i2, out = mid - 1, buf + n2 - 1, hi - 1
        while i1 >= lo and i2 >= buf:
            comparisons += 1
            if less(a[i2], a[i1]):
                a[out], a[i1] = a[i1], a[out]
                i1 -= 1
            else:
                a[out], a[i2] = a[i2], a[out]
                i2 -= 1
            out -= 1
        while i2 >= buf:
            a[out], a[i2] = a[i2], a[out]
            i2 -= 1
            out -= 1
    return comparisons


def merge_with_buffer(
    array: Elements,
    run1: Span,
    run2: Span,
    buffer: Span,
    comparator: CountingComparator,
) -> int:
    """
    Merge two adjacent sorted runs in place, moving the shorter one into `buffer`.

    Ties go to `run1`. The buffer ends up holding its original elements in some
    order.

    Args:
        array: The array holding runs and buffer.
        run1: Left run.
        run2: Right run, starting where `run1` ends.
        buffer: Scratch range disjoint from both runs.
        comparator: Comparator booking the merge comparisons.

    Returns:
        Comparisons spent.

    Raises:
        ContractViolation: If the runs are not adjacent, the buffer overlaps them or
            it is shorter than the shorter run.
    """
    if run1.hi != run2.lo:
        raise ContractViolation("runs must be adjacent")
    if buffer.overlaps(Span(run1.lo, run2.hi)):
        raise ContractViolation("buffer overlaps the runs")
    if min(len(run1), len(run2)) > len(buffer):
        raise ContractViolation(
            f"buffer of {len(buffer)} elements cannot hold a run of "
            f"{min(len(run1), len(run2))}"
        )
    return _merge(array, run1.lo, run1.hi, run2.hi, buffer.lo, comparator.less)


def _top_down(a: Elements, lo: int, hi: int, buf: int, less: Less) -> int:
    if hi - lo < 2:
        return 0
    mid = lo + (hi - lo + 1) // 2
    comparisons = _top_down(a, lo, mid, buf, less)
    comparisons += _top_down(a, mid, hi, buf, less)
    return comparisons + _merge(a, lo, mid, hi, buf, less)


def _bottom_up(a: Elements, lo: int, hi: int, buf: int, less: Less) -> int:
    comparisons = 0
    width = 1
    while width < hi - lo:
        for start in range(lo, hi, 2 * width):
            mid = start + width
            if mid >= hi:
                break
            comparisons += _merge(a, start, mid, min(start + 2 * width, hi), buf, less)
        width *= 2
    return comparisons


def sort_segment(
    array: Elements,
    segment: Span,
    buffer: Span,
    config: MergeXConfig,
    comparator: CountingComparator,
) -> int:
    """
    Sort `segment` by Mergesort using `buffer` for the merges.

    TopDown splits into ceil(m/2) and floor(m/2); BottomUp merges runs of width
    1, 2, 4, ... from left to right.

    Raises:
        ContractViolation: If the buffer overlaps the segment or holds fewer than
            floor(alpha * m) elements.
    """
    m = len(segment)
    if buffer.overlaps(segment):
        raise ContractViolation("buffer overlaps the segment")
    if len(buffer) < floor(config.alpha * m):
        raise ContractViolation(
            f"buffer of {len(buffer)} elements is too small for a segment of {m}"
        )
    driver = _top_down if config.variant is MergeVariant.TOP_DOWN else _bottom_up
    return driver(array, segment.lo, segment.hi, buffer.lo, comparator.less)


class MergeX:
    """Mergesort packaged as a BufferedSorter."""

    def __init__(self, config: MergeXConfig) -> None:
        self.config = config
        self.alpha: Fraction = config.alpha

    def sort(
        self,
        array: Elements,
        segment: Span,
        buffer: Span,
        comparator: CountingComparator,
    ) -> int:
        return sort_segment(array, segment, buffer, self.config, comparator)

    def __repr__(self) -> str:
        return f"MergeX({self.config.variant.value}, alpha={self.alpha})"


def initialize_merge_x(
    variant: MergeVariant = MergeVariant.TOP_DOWN,
    alpha_mode: AlphaMode = AlphaMode.HALF,
) -> MergeX:
    """
    Initialize Mergesort as X.

    Args:
        variant: TopDown or BottomUp merge schedule.
        alpha_mode: Half keeps the buffer at floor(m/2); One makes the engine always
            hand Mergesort the smaller segment.
    """
    return MergeX(MergeXConfig(variant=variant, alpha_mode=alpha_mode))
