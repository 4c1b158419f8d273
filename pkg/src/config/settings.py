"""
Application Configuration Settings

These settings control the sorters, the oracle and the experiment harness.
"""

from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Application configuration settings, loaded from environment variables.

    These settings are validated using Pydantic to ensure type safety and correctness.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application Behavior
    log: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="INFO", description="The logging level for the application."
    )

    # Sorting Engine Configuration
    sampling_t: int = Field(
        default=1,
        ge=0,
        description="Default sampling parameter t; the pivot is the median of 2t+1 elements.",
    )
    base_threshold: int = Field(
        default=16,
        ge=0,
        description="Segments of at most this size (or k-1, whichever is larger) go to Insertionsort.",
    )
    heap_sentinel_accounting: Literal["charged", "free"] = Field(
        default="charged",
        description="Whether structurally resolved heap sentinel steps are charged as comparisons.",
    )

    # Experiment Configuration
    default_seed: int = Field(
        default=2018, ge=0, description="Master seed for benchmark input generation."
    )
    default_trials: int = Field(
        default=100, gt=0, description="Default number of trials per benchmark row."
    )
    bench_workers: Optional[int] = Field(
        default=None,
        gt=0,
        description="Worker processes for benchmark trials. None uses the physical CPU count.",
    )
    float_significant_digits: int = Field(
        default=6,
        gt=0,
        le=17,
        description="Significant digits for floats in exported tables.",
    )

    # Oracle Configuration
    oracle_exact_limit: int = Field(
        default=512,
        gt=0,
        description="Largest size for which the cost recurrence is solved in exact rationals.",
    )
    oracle_enumeration_limit: int = Field(
        default=8,
        gt=0,
        le=9,
        description="Largest size compared against exhaustive enumeration by the oracle report.",
    )
    heap_enumeration_limit: int = Field(
        default=10,
        gt=0,
        le=10,
        description="Largest size whose external Heapsort cost is enumerated exactly.",
    )
    heap_empirical_trials: int = Field(
        default=100_000,
        gt=0,
        description="Trials per size for the empirical external Heapsort cost table.",
    )


# Global settings instance, accessible throughout the application
settings = Settings()
