"""
Comparison counting and run verification shared by every sorter.

Elements carry a key and an id. The element type defines no ordering of its own,
so the only way a sorter can order two elements is through `counting_compare`
(usually via `CountingComparator.less`), and every call is tallied on the
active channel.
"""

from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Any, Dict, Iterable, Iterator, List, MutableSequence

from src.schemas.sorting import RunStats, Verdict, Violation


class Channel(str, Enum):
    """Where a comparison was spent."""

    SAMPLE = "sample"
    PARTITION = "partition"
    X = "x"
    BASE = "base"


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True, slots=True, eq=False)
class CountedElement:
    """A sortable element; `id` tags it for permutation checks and never orders it."""

    key: Any
    id: int


@dataclass(slots=True)
class Tally:
    """Exact comparison count of one channel. Python ints do not overflow."""

    channel: Channel
    count: int = 0


def counting_compare(a: CountedElement, b: CountedElement, tally: Tally) -> Ordering:
    """
    Three-way key comparison that charges exactly one comparison to `tally`.

    Args:
        a: Left operand.
        b: Right operand.
        tally: Tally receiving the charge.

    Returns:
        Ordering of `a.key` relative to `b.key`.
    """
    tally.count += 1
    if a.key < b.key:
        return Ordering.LESS
    if b.key < a.key:
        return Ordering.GREATER
    return Ordering.EQUAL


class CountingComparator:
    """
    Per-run comparator with one tally per channel.

    The active channel is switched with `channel(...)`; `less` and `charge` always
    book onto the active one.
    """

    __slots__ = ("tallies", "_active")

    def __init__(self) -> None:
        self.tallies: Dict[Channel, Tally] = {c: Tally(c) for c in Channel}
        self._active = self.tallies[Channel.BASE]

    @contextmanager
    def channel(self, channel: Channel) -> Iterator["CountingComparator"]:
        previous = self._active
        self._active = self.tallies[channel]
        try:
            yield self
        finally:
            self._active = previous

    def less(self, a: CountedElement, b: CountedElement) -> bool:
        return counting_compare(a, b, self._active) is Ordering.LESS

    def charge(self, units: int = 1) -> None:
        """Book comparisons that were resolved structurally, without reading keys."""
        self._active.count += units

    def count(self, channel: Channel) -> int:
        return self.tallies[channel].count

    @property
    def total(self) -> int:
        return sum(t.count for t in self.tallies.values())


@dataclass(slots=True)
class ElementSnapshot:
    """Id multiset of an array taken before a run."""

    ids: Counter[int] = field(default_factory=Counter)
    size: int = 0


def make_elements(keys: Iterable[Any]) -> List[CountedElement]:
    """Wrap keys as elements with ids 0..n-1 in input order."""
    return [CountedElement(key, i) for i, key in enumerate(keys)]


def snapshot(elements: Iterable[CountedElement]) -> ElementSnapshot:
    ids: Counter[int] = Counter(e.id for e in elements)
    return ElementSnapshot(ids=ids, size=sum(ids.values()))


def is_sorted(
    array: MutableSequence[CountedElement], lo: int = 0, hi: int = -1
) -> bool:
    """Uncounted sortedness check of `array[lo:hi]` (whole array by default)."""
    end = len(array) if hi < 0 else hi
    return all(not (array[i + 1].key < array[i].key) for i in range(lo, end - 1))


def verify_run(
    before: ElementSnapshot, after: MutableSequence[CountedElement], stats: RunStats
) -> Verdict:
    """
    Check a finished run.

    Args:
        before: Snapshot taken before sorting.
        after: The array after sorting.
        stats: Statistics reported by the run.

    Returns:
        Verdict listing every violated property; empty when the run is valid.
    """
    verdict = Verdict()
    if not is_sorted(after):
        first = next(
            i for i in range(len(after) - 1) if after[i + 1].key < after[i].key
        )
        verdict.violations.append(Violation.SORTEDNESS)
        verdict.details.append(f"descent at index {first}")
    after_ids: Counter[int] = Counter(e.id for e in after)
    if after_ids != before.ids:
        verdict.violations.append(Violation.PERMUTATION)
        missing = sorted((before.ids - after_ids).keys())[:5]
        extra = sorted((after_ids - before.ids).keys())[:5]
        verdict.details.append(f"ids missing {missing}, unexpected {extra}")
    if stats.channel_sum != stats.comparisons:
        verdict.violations.append(Violation.TALLY)
        verdict.details.append(
            f"channels sum to {stats.channel_sum}, total is {stats.comparisons}"
        )
    return verdict
