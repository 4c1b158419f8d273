"""
Sorting schema: sampling configuration, partitioning outcomes and run statistics.

These records describe one QuickXsort run. They are created a handful of times per
run (once per partitioning round), so they are validated Pydantic models; the
per-comparison value types live in `src.components.instrument`.
"""

from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field


class SamplePolicy(str, Enum):
    """Where the pivot sample is taken from."""

    PSEUDO_RANDOM = "pseudo_random"
    DETERMINISTIC_PREFIX = "deterministic_prefix"


class Side(str, Enum):
    """One of the two segments left by a partitioning round."""

    LEFT = "left"
    RIGHT = "right"

    @property
    def other(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class SamplingScheme(BaseModel):
    """
    Median-of-k pivot sampling, k = 2t + 1.

    DeterministicPrefix always samples the first k positions of the segment, which
    makes a run a deterministic function of the input permutation.
    """

    model_config = ConfigDict(frozen=True)

    t: int = Field(default=1, ge=0, description="Sampling parameter; k = 2t + 1")
    sample_policy: SamplePolicy = Field(
        default=SamplePolicy.PSEUDO_RANDOM,
        description="How sample positions are chosen",
    )
    seed: Optional[int] = Field(
        default=None,
        ge=0,
        description="Seed for PseudoRandomPositions; None draws fresh OS entropy",
    )

    @computed_field  # type: ignore[prop-decorator]
    @property
    def k(self) -> int:
        """Sample size."""
        return 2 * self.t + 1

    def make_rng(self) -> np.random.Generator:
        """Build the random source used to pick sample positions."""
        return np.random.default_rng(self.seed)


class PartitionOutcome(BaseModel):
    """
    Result of one partitioning round on a segment of `size` elements.

    `x_side` and `recurse_side` stay None until `assign_sides` has run.
    """

    size: int = Field(..., ge=1, description="Segment size n of this round")
    j1: int = Field(..., ge=0, description="Size of the below-pivot segment")
    j2: int = Field(..., ge=0, description="Size of the above-pivot segment")
    pivot_pos: int = Field(..., ge=0, description="Final array index of the pivot")
    x_side: Optional[Side] = Field(default=None, description="Segment sorted by X")
    recurse_side: Optional[Side] = Field(
        default=None, description="Segment handled by the next round"
    )
    sample_comparisons: int = Field(default=0, ge=0)
    partition_comparisons: int = Field(default=0, ge=0)
    x_comparisons: int = Field(default=0, ge=0)


class RunStats(BaseModel):
    """Exact comparison tally and structural counters for one sorting run."""

    comparisons: int = Field(..., ge=0, description="Total comparisons")
    sample_comparisons: int = Field(default=0, ge=0)
    partition_comparisons: int = Field(default=0, ge=0)
    x_comparisons: int = Field(default=0, ge=0)
    base_case_comparisons: int = Field(default=0, ge=0)
    max_recursion_depth: int = Field(
        default=0, ge=0, description="Number of partitioning rounds"
    )
    rounds: List[PartitionOutcome] = Field(default_factory=list)

    @property
    def channel_sum(self) -> int:
        return (
            self.sample_comparisons
            + self.partition_comparisons
            + self.x_comparisons
            + self.base_case_comparisons
        )


class Violation(str, Enum):
    """Properties checked by `verify_run`."""

    SORTEDNESS = "sortedness"
    PERMUTATION = "permutation"
    TALLY = "tally"


class Verdict(BaseModel):
    """Outcome of verifying one run."""

    violations: List[Violation] = Field(default_factory=list)
    details: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations
