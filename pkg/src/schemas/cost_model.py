"""
Cost model schema: which buffered sorter X is used and how its cost is described.
"""

from enum import Enum
from fractions import Fraction
from typing import Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

Ratio = Union[Fraction, int, float, str]


def to_fraction(value: object) -> Fraction:
    """Read a ratio given as Fraction, int, decimal float or "p/q" string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    raise ValueError(f"cannot read {value!r} as a ratio")


class Algorithm(str, Enum):
    """QuickXsort instantiations the harness can run."""

    QUICK_MERGESORT_TD = "QuickMergesortTD"
    QUICK_MERGESORT_BU = "QuickMergesortBU"
    QUICK_MERGESORT_ALPHA1 = "QuickMergesortAlpha1"
    QUICK_HEAPSORT = "QuickHeapsort"


class XKind(str, Enum):
    """Buffered sorters with a closed-form cost bound."""

    MERGE_TD = "MergeTD"
    MERGE_BU = "MergeBU"
    EXT_HEAP = "ExtHeap"


class MergeVariant(str, Enum):
    TOP_DOWN = "top_down"
    BOTTOM_UP = "bottom_up"


class AlphaMode(str, Enum):
    """Buffer ratio Mergesort declares to the engine."""

    HALF = "half"
    ONE = "one"


class MergeXConfig(BaseModel):
    """Mergesort as the buffered sorter."""

    model_config = ConfigDict(frozen=True)

    variant: MergeVariant = Field(default=MergeVariant.TOP_DOWN)
    alpha_mode: AlphaMode = Field(default=AlphaMode.HALF)

    @property
    def alpha(self) -> Fraction:
        return Fraction(1, 2) if self.alpha_mode is AlphaMode.HALF else Fraction(1)


class CostModelParams(BaseModel):
    """
    Average cost of X, x(n) = a n lg n + b n +- O(n^(1 - epsilon)), plus the
    QuickXsort parameters it is combined with.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a: float = Field(default=1.0, gt=0.0, description="Leading coefficient")
    b: float = Field(..., description="Linear coefficient")
    epsilon: float = Field(default=1.0, gt=0.0, le=1.0, description="Error exponent")
    alpha: Fraction = Field(..., description="Buffer ratio in (0, 1]")
    t: int = Field(default=1, ge=0, description="Sampling parameter")

    @field_validator("alpha", mode="before")
    @classmethod
    def _coerce_alpha(cls, value: object) -> Fraction:
        alpha = to_fraction(value)
        if not 0 < alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
        return alpha
