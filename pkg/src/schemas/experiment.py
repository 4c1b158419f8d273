"""
Experiment schema: what the command-line harness runs and the rows it reports.
"""

from enum import Enum
from fractions import Fraction
from typing import Annotated, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from src.config.settings import settings
from src.schemas.cost_model import Algorithm


class OutputFormat(str, Enum):
    TABLE = "table"
    CSV = "csv"
    TSV = "tsv"


class ExperimentSpec(BaseModel):
    """A grid of (algorithm, n, t) benchmark cells."""

    model_config = ConfigDict(frozen=True)

    algorithm: Algorithm = Field(default=Algorithm.QUICK_MERGESORT_TD)
    n_list: List[Annotated[int, Field(ge=1)]] = Field(
        ..., min_length=1, description="Input sizes"
    )
    t_list: List[Annotated[int, Field(ge=0)]] = Field(
        default_factory=lambda: [settings.sampling_t], min_length=1
    )
    trials: int = Field(default=settings.default_trials, ge=1)
    seed: int = Field(default=settings.default_seed, ge=0)
    output_format: OutputFormat = Field(default=OutputFormat.TABLE)

    def cells(self) -> List[Tuple[int, int]]:
        """(n, t) pairs in report order."""
        return [(n, t) for n in self.n_list for t in self.t_list]


class BenchRow(BaseModel):
    algorithm: Algorithm
    n: int = Field(..., ge=1)
    t: int = Field(..., ge=0)
    trials: int = Field(..., ge=1)
    mean: float
    stddev: float
    linear_coeff: float = Field(..., description="(mean - n lg n) / n")
    predicted: float
    delta: float = Field(..., description="mean - predicted")


class PredictionRow(BaseModel):
    algorithm: Algorithm
    n: int = Field(..., ge=1)
    t: int = Field(..., ge=0)
    predicted: float
    leading_term: float
    linear_coeff: float


class OracleRow(BaseModel):
    """DP value for one size, with the enumeration cross-check when it was run."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int = Field(..., ge=0)
    recurrence: Union[Fraction, float]
    enumeration: Optional[Fraction] = None

    @property
    def passed(self) -> Optional[bool]:
        if self.enumeration is None:
            return None
        return self.recurrence == self.enumeration


class PublishedMeasurement(BaseModel):
    """Observed QuickHeapsort average from earlier experiments."""

    model_config = ConfigDict(frozen=True)

    source: str
    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    observed: int = Field(..., ge=0)
    published_delta: int = Field(
        ..., description="Published estimate minus observed, for this cost model"
    )
    cc_bound_delta: Optional[int] = Field(
        default=None,
        description="Earlier CC bound minus observed; only stated for k = 1",
    )
    dw_bound_delta: int = Field(..., description="Earlier DW bound minus observed")
