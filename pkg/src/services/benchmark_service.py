"""
Benchmark Service runs seeded QuickXsort trials and summarizes their costs.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

import numpy as np
import psutil
from loguru import logger as log

from src.components.instrument import make_elements, snapshot, verify_run
from src.config.settings import settings
from src.errors import ContractViolation, VerificationError
from src.pipelines.quickxsort.pipeline import initialize_quickxsort_pipeline
from src.schemas.cost_model import Algorithm
from src.schemas.experiment import BenchRow, ExperimentSpec
from src.services.theory_service import cost_params, leading_term, predict_total

ALGORITHM_CODES = {algorithm: code for code, algorithm in enumerate(Algorithm)}


def trial_seeds(
    seed: int, algorithm: Algorithm, n: int, t: int, trials: int
) -> List[np.random.SeedSequence]:
    """Per-trial seeds derived from the master seed and the cell."""
    root = np.random.SeedSequence([seed, ALGORITHM_CODES[algorithm], n, t])
    return root.spawn(trials)


def run_trial(
    algorithm: Algorithm, n: int, t: int, seed_seq: np.random.SeedSequence
) -> int:
    """
    Sort one random permutation of 0..n-1 and return its verified comparison count.

    The input permutation and the sample positions are drawn from the same
    generator, so the count is a function of `seed_seq` alone.

    Raises:
        VerificationError: If the run fails verification.
    """
    rng = np.random.default_rng(seed_seq)
    elements = make_elements(rng.permutation(n).tolist())
    before = snapshot(elements)
    pipeline = initialize_quickxsort_pipeline(algorithm, t=t)
    stats = pipeline.run(elements, rng)
    verdict = verify_run(before, elements, stats)
    if not verdict.passed:
        log.error(
            "{} n={} t={} failed verification: {}",
            algorithm.value,
            n,
            t,
            "; ".join(verdict.details),
        )
        raise VerificationError(
            f"{algorithm.value} n={n} t={t} failed: "
            + ", ".join(v.value for v in verdict.violations),
            verdict,
        )
    return stats.comparisons


class BenchmarkService:
    """
    Runs benchmark cells and turns their comparison counts into report rows.

    Attributes:
        workers (int): Worker processes for trials; 1 runs them in-process.
    """

    def __init__(self, workers: Optional[int] = settings.bench_workers):
        self.workers = workers or psutil.cpu_count(logical=False) or 1
        log.debug("BenchmarkService initialized with {} workers", self.workers)

    def run_trials(
        self, algorithm: Algorithm, n: int, t: int, trials: int, seed: int
    ) -> np.ndarray:
        """
        Comparison counts of `trials` seeded runs, in trial order.

        Raises:
            VerificationError: If any run fails verification.
            RuntimeError: If the trials could not be run.
        """
        seeds = trial_seeds(seed, algorithm, n, t, trials)
        try:
            if self.workers > 1 and trials > 1:
                with ProcessPoolExecutor(max_workers=self.workers) as pool:
                    counts = list(
                        pool.map(
                            run_trial,
                            [algorithm] * trials,
                            [n] * trials,
                            [t] * trials,
                            seeds,
                        )
                    )
            else:
                counts = [run_trial(algorithm, n, t, s) for s in seeds]
        except (VerificationError, ContractViolation):
            raise
        except Exception as e:
            log.error(
                "Failed to run trials for {} n={} t={}: {}", algorithm.value, n, t, e
            )
            raise RuntimeError(f"Failed to run trials: {e}") from e
        return np.asarray(counts, dtype=np.int64)

    def summarize(
        self, algorithm: Algorithm, n: int, t: int, counts: np.ndarray
    ) -> BenchRow:
        """Mean, sample standard deviation and the comparison against theory."""
        mean = float(np.mean(counts))
        stddev = float(np.std(counts, ddof=1)) if len(counts) > 1 else 0.0
        predicted = predict_total(n, cost_params(algorithm, t))
        return BenchRow(
            algorithm=algorithm,
            n=n,
            t=t,
            trials=len(counts),
            mean=mean,
            stddev=stddev,
            linear_coeff=(mean - leading_term(n)) / n,
            predicted=predicted,
            delta=mean - predicted,
        )

    def bench(self, spec: ExperimentSpec) -> List[BenchRow]:
        """
        Run every (n, t) cell of an experiment.

        Returns:
            List[BenchRow]: One row per cell, in `spec.cells()` order.
        """
        rows: List[BenchRow] = []
        for n, t in spec.cells():
            counts = self.run_trials(spec.algorithm, n, t, spec.trials, spec.seed)
            row = self.summarize(spec.algorithm, n, t, counts)
            log.info(
                "{} n={} t={}: mean {:.1f}, (mean - n lg n)/n = {:.4f}",
                spec.algorithm.value,
                n,
                t,
                row.mean,
                row.linear_coeff,
            )
            rows.append(row)
        return rows

