"""
External Heapsort as the buffered sorter X.

The heap is built over the segment with Floyd's method. Every delete-top swaps the
top into the next output cell of the buffer; the buffer element it displaces is
beyond every live heap element, so it enters the heap at a leaf as a sentinel
once the gap left by the top has been promoted down to that leaf.
Sentinel slots are tracked in a mask and never compared.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from src.components.engine import Elements, Span
from src.components.instrument import CountedElement, CountingComparator
from src.config.settings import settings
from src.errors import ContractViolation


class HeapPolarity(str, Enum):
    MAX = "max"
    MIN = "min"


class SentinelAccounting(str, Enum):
    """
    How gap steps decided by the sentinel mask are booked.

    CHARGED books one comparison per such step, which is what a heap holding real
    -inf sentinels would spend. FREE books nothing for them.
    """

    CHARGED = "charged"
    FREE = "free"


@dataclass(slots=True)
class HeapArena:
    """Heap over `array[lo:lo + size]` plus its sentinel bookkeeping."""

    array: Elements
    lo: int
    size: int
    polarity: HeapPolarity
    accounting: SentinelAccounting = SentinelAccounting.CHARGED
    sentinel_mask: List[bool] = field(default_factory=list)
    live_count: int = 0

    def __post_init__(self) -> None:
        if not self.sentinel_mask:
            self.sentinel_mask = [False] * self.size
            self.live_count = self.size

    def above(
        self, x: CountedElement, y: CountedElement, comparator: CountingComparator
    ) -> bool:
        """Whether `x` belongs above `y` in this heap; one comparison."""
        if self.polarity is HeapPolarity.MAX:
            return comparator.less(y, x)
        return comparator.less(x, y)


def build_heap(
    array: Elements,
    segment: Span,
    polarity: HeapPolarity,
    comparator: CountingComparator,
) -> int:
    """
    Floyd's bottom-up heap construction.

    Each sift level with two children costs two comparisons: child against child,
    then the winner against the sifted element.

    Returns:
        Comparisons spent.
    """
    lo, m = segment.lo, len(segment)
    arena = HeapArena(array, lo, m, polarity)
    comparisons = 0
    for i in range(m // 2 - 1, -1, -1):
        item = array[lo + i]
        gap = i
        while True:
            child = 2 * gap + 1
            if child >= m:
                break
            if child + 1 < m:
                comparisons += 1
                if arena.above(array[lo + child + 1], array[lo + child], comparator):
                    child += 1
            comparisons += 1
            if not arena.above(array[lo + child], item, comparator):
                break
            array[lo + gap] = array[lo + child]
            gap = child
        array[lo + gap] = item
    return comparisons


def delete_top(
    arena: HeapArena, incoming: CountedElement, comparator: CountingComparator
) -> Tuple[CountedElement, int]:
    """
    Remove the top and let `incoming` take a leaf as a sentinel.

    The gap at the root always travels down to a leaf. At a node with two live
    children the better child is found with one comparison; where a sentinel is
    involved the mask decides (live child first, left child when both are
    sentinels) and the step is booked per the arena's accounting.

    Returns:
        (previous top, comparisons booked).

    Raises:
        ContractViolation: If the heap has no live element left.
    """
    if arena.live_count < 1:
        raise ContractViolation("delete_top on an empty heap")
    a, lo, m, mask = arena.array, arena.lo, arena.size, arena.sentinel_mask
    charged = arena.accounting is SentinelAccounting.CHARGED
    top = a[lo]
    comparisons = 0
    gap = 0
    while True:
        child = 2 * gap + 1
        if child >= m:
            break
        right = child + 1
        if right < m:
            left_dead, right_dead = mask[child], mask[right]
            if not left_dead and not right_dead:
                comparisons += 1
                if arena.above(a[lo + right], a[lo + child], comparator):
                    child = right
            else:
                if left_dead and not right_dead:
                    child = right
                if charged:
                    comparator.charge(1)
                    comparisons += 1
        a[lo + gap] = a[lo + child]
        mask[gap] = mask[child]
        gap = child
    a[lo + gap] = incoming
    mask[gap] = True
    arena.live_count -= 1
    return top, comparisons


def external_heapsort(
    array: Elements,
    segment: Span,
    buffer: Span,
    comparator: CountingComparator,
    polarity: Optional[HeapPolarity] = None,
    accounting: SentinelAccounting = SentinelAccounting.CHARGED,
) -> int:
    """
    Sort `segment` by Heapsort, writing the output into `buffer` first.

    A MaxHeap is used when the buffer lies left of the segment (its elements are
    all smaller): maxima go to the buffer from its right end downwards. A MinHeap
    mirrors this from the left end of a buffer on the right. The sorted block is
    finally swapped back into the segment.

    Args:
        array: Array holding segment and buffer.
        segment: Range to sort.
        buffer: Range of at least len(segment) elements, all on one side of the
            segment's elements in sort order.
        comparator: Comparator booking the heap comparisons.
        polarity: Heap polarity; derived from the buffer position when omitted.
        accounting: Booking of mask-decided gap steps.

    Returns:
        Comparisons spent in construction and sort-down.

    Raises:
        ContractViolation: If the buffer is smaller than the segment or overlaps it.
    """
    m = len(segment)
    if len(buffer) < m:
        raise ContractViolation(
            f"buffer of {len(buffer)} elements is too small for a segment of {m}"
        )
    if buffer.overlaps(segment):
        raise ContractViolation("buffer overlaps the segment")
    if m == 0:
        return 0
    if polarity is None:
        polarity = HeapPolarity.MAX if buffer.hi <= segment.lo else HeapPolarity.MIN

    comparisons = build_heap(array, segment, polarity, comparator)
    arena = HeapArena(array, segment.lo, m, polarity, accounting)
    if polarity is HeapPolarity.MAX:
        cells = range(buffer.hi - 1, buffer.hi - 1 - m, -1)
        out_lo = buffer.hi - m
    else:
        cells = range(buffer.lo, buffer.lo + m)
        out_lo = buffer.lo
    for cell in cells:
        top, spent = delete_top(arena, array[cell], comparator)
        array[cell] = top
        comparisons += spent

    for i in range(m):
        src, dst = segment.lo + i, out_lo + i
        array[src], array[dst] = array[dst], array[src]
    return comparisons


class HeapX:
    """External Heapsort packaged as a BufferedSorter (alpha = 1)."""

    alpha: Fraction = Fraction(1)

    def __init__(self, accounting: SentinelAccounting) -> None:
        self.accounting = accounting

    def sort(
        self,
        array: Elements,
        segment: Span,
        buffer: Span,
        comparator: CountingComparator,
    ) -> int:
        return external_heapsort(
            array, segment, buffer, comparator, accounting=self.accounting
        )

    def __repr__(self) -> str:
        return f"HeapX({self.accounting.value})"


def initialize_heap_x(
    accounting: str = settings.heap_sentinel_accounting,
) -> HeapX:
    """
    Initialize external Heapsort as X.

    Args:
        accounting: "charged" or "free" booking of mask-decided gap steps.
    """
    return HeapX(SentinelAccounting(accounting))
