"""
QuickXsort Pipeline

Wires a sampling scheme, a buffered sorter X and the engine into one runnable
sorter for each supported algorithm.
"""

from typing import Any, Iterable, List, Optional, Tuple

import numpy as np
from loguru import logger as log

from src.components.engine import BufferedSorter, quickxsort
from src.components.heap_x import initialize_heap_x
from src.components.instrument import CountedElement, make_elements
from src.components.merge_x import initialize_merge_x
from src.config.settings import settings
from src.schemas.cost_model import Algorithm, AlphaMode, MergeVariant
from src.schemas.sorting import RunStats, SamplePolicy, SamplingScheme


def initialize_buffered_sorter(
    algorithm: Algorithm,
    heap_accounting: str = settings.heap_sentinel_accounting,
) -> BufferedSorter:
    """
    Initialize the X behind an algorithm.

    Args:
        algorithm: QuickXsort instantiation.
        heap_accounting: Sentinel accounting for external Heapsort.

    Returns:
        The buffered sorter.
    """
    if algorithm is Algorithm.QUICK_MERGESORT_TD:
        return initialize_merge_x(MergeVariant.TOP_DOWN, AlphaMode.HALF)
    if algorithm is Algorithm.QUICK_MERGESORT_BU:
        return initialize_merge_x(MergeVariant.BOTTOM_UP, AlphaMode.HALF)
    if algorithm is Algorithm.QUICK_MERGESORT_ALPHA1:
        return initialize_merge_x(MergeVariant.TOP_DOWN, AlphaMode.ONE)
    return initialize_heap_x(heap_accounting)


class QuickXsortPipeline:
    """
    A configured QuickXsort sorter.

    Attributes:
        algorithm: Which X is used.
        scheme: Pivot sampling scheme.
        x: The buffered sorter.
        base_threshold: Insertionsort threshold handed to the engine (None = default).
        audit: Whether every round is re-checked.
    """

    def __init__(
        self,
        algorithm: Algorithm,
        scheme: SamplingScheme,
        x: BufferedSorter,
        base_threshold: Optional[int] = None,
        audit: bool = False,
    ) -> None:
        self.algorithm = algorithm
        self.scheme = scheme
        self.x = x
        self.base_threshold = base_threshold
        self.audit = audit

    def run(
        self,
        elements: List[CountedElement],
        rng: Optional[np.random.Generator] = None,
    ) -> RunStats:
        """Sort `elements` in place and return the run's statistics."""
        return quickxsort(
            elements,
            self.scheme,
            self.x,
            base_threshold=self.base_threshold,
            rng=rng,
            audit=self.audit,
        )

    def sort_keys(
        self, keys: Iterable[Any], rng: Optional[np.random.Generator] = None
    ) -> Tuple[List[CountedElement], RunStats]:
        """Wrap `keys` as elements, sort them and return (elements, stats)."""
        elements = make_elements(keys)
        return elements, self.run(elements, rng)


def initialize_quickxsort_pipeline(
    algorithm: Algorithm = Algorithm.QUICK_MERGESORT_TD,
    t: int = settings.sampling_t,
    sample_policy: SamplePolicy = SamplePolicy.PSEUDO_RANDOM,
    base_threshold: Optional[int] = None,
    heap_accounting: str = settings.heap_sentinel_accounting,
    seed: Optional[int] = None,
    audit: bool = False,
) -> QuickXsortPipeline:
    """
    Initialize a QuickXsort pipeline.

    Args:
        algorithm: QuickXsort instantiation.
        t: Sampling parameter, k = 2t + 1.
        sample_policy: PseudoRandomPositions or DeterministicPrefix.
        base_threshold: Insertionsort threshold; None uses max(k, settings value).
        heap_accounting: Sentinel accounting for QuickHeapsort.
        seed: Seed for sample positions when no rng is passed to `run`.
        audit: Re-check partition counts and buffer contents every round.

    Returns:
        Configured QuickXsortPipeline.
    """
    scheme = SamplingScheme(t=t, sample_policy=sample_policy, seed=seed)
    x = initialize_buffered_sorter(algorithm, heap_accounting)
    log.debug("Initialized {} with t={} and X={!r}", algorithm.value, t, x)
    return QuickXsortPipeline(algorithm, scheme, x, base_threshold, audit)
