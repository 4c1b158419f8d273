import math
from fractions import Fraction
from typing import Tuple

import numpy as np
import pytest
from scipy import stats

from src.errors import ContractViolation
from src.schemas.cost_model import Algorithm, CostModelParams, XKind
from src.services.theory_service import (
    PUBLISHED_MEASUREMENTS,
    H_value,
    beta,
    beta_binomial_pmf,
    beta_binomial_vector,
    cost_params,
    expected_fraction_in_range,
    expected_fraction_log,
    harmonic,
    heap_sortdown_model,
    leading_term,
    linear_coefficient,
    local_limit_error,
    penalty_q,
    predict_total,
    recursion_weights,
    recursive_fraction,
    reg_incomplete_beta,
    shape_mean,
    shape_w,
    skewed_cost_coefficient,
    subproblem_size_pmf,
    x_model,
)

PENALTY_TABLE = {
    (0, 1): 1.1146,
    (1, 1): 0.5070,
    (2, 1): 0.3210,
    (3, 1): 0.2328,
    (10, 1): 0.07705,
    (0, Fraction(1, 2)): 0.9120,
    (1, Fraction(1, 2)): 0.4050,
    (2, Fraction(1, 2)): 0.2526,
    (3, Fraction(1, 2)): 0.1815,
    (10, Fraction(1, 2)): 0.05956,
}


class TestExactBuildingBlocks:
    """Rational helpers."""

    def test_harmonic(self) -> None:
        """Test the harmonic numbers."""
        assert harmonic(0) == 0
        assert harmonic(3) == Fraction(11, 6)
        with pytest.raises(ContractViolation):
            harmonic(-1)

    def test_beta(self) -> None:
        """Test the beta function on integer shapes."""
        assert beta(1, 1) == 1
        assert beta(2, 2) == Fraction(1, 6)
        with pytest.raises(ContractViolation):
            beta(0, 2)

    def test_reg_incomplete_beta(self) -> None:
        """Test the regularized incomplete beta integral."""
        assert reg_incomplete_beta(0, 1, 3, 4) == 1
        assert reg_incomplete_beta("1/4", "1/4", 2, 2) == 0
        # Beta(1, 1) is uniform.
        quarter = Fraction(1, 4)
        assert reg_incomplete_beta(quarter, 1 - quarter, 1, 1) == Fraction(1, 2)
        # Beta(2, 2) is symmetric around 1/2.
        assert reg_incomplete_beta(0, Fraction(1, 2), 2, 2) == Fraction(1, 2)
        with pytest.raises(ContractViolation):
            reg_incomplete_beta(Fraction(3, 4), Fraction(1, 4), 2, 2)

    def test_beta_binomial(self) -> None:
        """Test the beta-binomial PMF and vector."""
        vector = beta_binomial_vector(6, 2, 3)
        assert vector == [beta_binomial_pmf(6, i, 2, 3) for i in range(7)]
        assert sum(vector) == 1
        assert beta_binomial_pmf(6, 7, 2, 3) == 0
        # BetaBinomial(n, 1, 1) is uniform.
        assert beta_binomial_vector(4, 1, 1) == [Fraction(1, 5)] * 5

    def test_subproblem_size_pmf(self) -> None:
        """Median-of-3 out of five elements."""
        assert subproblem_size_pmf(5, 1) == [
            0,
            Fraction(3, 10),
            Fraction(2, 5),
            Fraction(3, 10),
            0,
        ]
        assert subproblem_size_pmf(4, 0) == [Fraction(1, 4)] * 4
        with pytest.raises(ContractViolation):
            subproblem_size_pmf(2, 1)

    def test_expected_fractions(self) -> None:
        """Test the expected share closed forms."""
        assert expected_fraction_log(1, 1) == Fraction(-1, 4)
        assert expected_fraction_in_range(0, 1, 2, 3) == Fraction(2, 5)


class TestIdentities:
    """Exact identities of the beta building blocks."""

    @pytest.mark.parametrize("a, b", [(1, 1), (2, 1), (3, 7), (23, 2), (50, 50)])
    @pytest.mark.parametrize("x", [Fraction(1, 7), Fraction(1, 2), Fraction(5, 6)])
    def test_complementary_ranges(self, a: int, b: int, x: Fraction) -> None:
        """Test that I over [0, x] and [x, 1] add up to one."""
        assert reg_incomplete_beta(0, x, a, b) + reg_incomplete_beta(x, 1, a, b) == 1

    @pytest.mark.parametrize("a, b", [(2, 1), (3, 2), (4, 4), (11, 5)])
    def test_four_ranges_cancel(self, a: int, b: int) -> None:
        """Test that the four ranges split at 1/3, 1/2 and 2/3 cover everything."""
        cuts = [Fraction(c, 6) for c in (0, 2, 3, 4, 6)]
        parts = [reg_incomplete_beta(x, y, a, b) for x, y in zip(cuts, cuts[1:])]
        assert sum(parts) == 1

    @pytest.mark.parametrize(
        "n, a, b", [(1, 1, 1), (17, 25, 1), (100, 3, 7), (250, 25, 25), (500, 1, 25)]
    )
    def test_beta_binomial_sums_to_one(self, n: int, a: int, b: int) -> None:
        """Test that the exact PMF has total mass one."""
        assert sum(beta_binomial_pmf(n, i, a, b) for i in range(n + 1)) == 1

    def test_pmf_matches_scipy(self) -> None:
        """Test the exact PMF against the floating point one."""
        exact = beta_binomial_vector(200, 2, 2)
        reference = stats.betabinom.pmf(np.arange(201), 200, 2, 2)
        np.testing.assert_allclose([float(p) for p in exact], reference, rtol=1e-9)

    def test_small_values(self) -> None:
        """Test hand-computed values of I and H."""
        assert reg_incomplete_beta(0, Fraction(1, 2), 2, 1) == Fraction(1, 4)
        assert reg_incomplete_beta(0, Fraction(1, 2), 3, 2) == Fraction(5, 16)
        # With alpha = 1 only the lower range contributes.
        assert H_value(1, 1) == Fraction(5, 16)

    def test_expected_fraction_values(self) -> None:
        """Test the closed forms on uniform and Beta(2, 2) subproblem sizes."""
        assert expected_fraction_in_range(Fraction(1, 2), 1, 1, 1) == Fraction(3, 8)
        assert expected_fraction_log(2, 2) == Fraction(-7, 24)
        assert expected_fraction_in_range(0, Fraction(1, 3), 2, 2) == Fraction(1, 18)


class TestFiniteSizes:
    """Limits against sums over the beta-binomial PMF at n = 10^4."""

    n = 10**4

    @pytest.fixture
    def shares(self) -> Tuple[np.ndarray, np.ndarray]:
        """Relative sizes j/n with their BetaBinomial(n, 2, 2) probabilities."""
        j = np.arange(self.n + 1)
        return j / self.n, stats.betabinom.pmf(j, self.n, 2, 2)

    def test_fraction_in_range(self, shares: Tuple[np.ndarray, np.ndarray]) -> None:
        """Test E[[J <= n/3] J/n] against its limit."""
        z, pmf = shares
        finite = float(np.sum(pmf * z * (z <= 1 / 3)))
        limit = float(expected_fraction_in_range(0, Fraction(1, 3), 2, 2))
        assert finite == pytest.approx(limit, abs=1e-3)

    def test_fraction_log(self, shares: Tuple[np.ndarray, np.ndarray]) -> None:
        """Test E[(J/n) ln(J/n)] against its limit."""
        z, pmf = shares
        # The j = 0 term vanishes.
        finite = float(np.sum(pmf[1:] * z[1:] * np.log(z[1:])))
        assert finite == pytest.approx(float(expected_fraction_log(2, 2)), abs=1e-3)

    def test_uniform_local_limit(self) -> None:
        """Test that n P{I = i} is n/(n+1) when the density is flat."""
        assert local_limit_error(10**3, 0) == pytest.approx(1 / 1001, rel=1e-6)
        assert local_limit_error(self.n, 0) < 1e-3


class TestTransferTheorem:
    """H, the penalty and the predicted totals."""

    def test_h_values(self) -> None:
        """Test H without sampling."""
        assert H_value(0, 1) == Fraction(1, 4)
        assert H_value(0, Fraction(1, 2)) == Fraction(11, 36)
        with pytest.raises(ContractViolation):
            H_value(1, Fraction(3, 2))

    @pytest.mark.parametrize("t, alpha", list(PENALTY_TABLE))
    def test_penalty_table(self, t: int, alpha: Fraction) -> None:
        """Test the penalty q(t, alpha) against the reference table."""
        assert penalty_q(t, alpha) == pytest.approx(PENALTY_TABLE[(t, alpha)], abs=5e-5)

    @pytest.mark.parametrize("alpha", [Fraction(1), Fraction(1, 2)])
    def test_penalty_decreases(self, alpha: Fraction) -> None:
        """Test that each extra pair of sample elements lowers the penalty."""
        values = [penalty_q(t, alpha) for t in range(11)]
        assert all(a > b for a, b in zip(values, values[1:]))
        # Median-of-3 more than halves the penalty.
        assert values[1] < 0.5 * values[0]

    @pytest.mark.parametrize(
        "t, alpha, expected",
        [(1, Fraction(1, 2), -0.8350), (2, Fraction(1, 2), -0.9874), (1, 1, -0.7330)],
    )
    def test_linear_constants(self, t: int, alpha: Fraction, expected: float) -> None:
        """Test the linear coefficients of QuickMergesort."""
        params = CostModelParams(b=-1.24, alpha=alpha, t=t)
        assert linear_coefficient(params) == pytest.approx(expected, abs=5e-5)

    @pytest.mark.parametrize(
        "n, t, expected",
        [(10**5, 0, 1_869_169), (10**6, 0, 22_013_622), (10**6, 1, 21_405_982)],
    )
    def test_quickheapsort_estimates(self, n: int, t: int, expected: int) -> None:
        """Test the QuickHeapsort totals."""
        params = cost_params(Algorithm.QUICK_HEAPSORT, t)
        assert predict_total(n, params) == pytest.approx(expected, abs=20)

    def test_prediction_at_one(self) -> None:
        """Test that the prediction at n = 1 is the linear coefficient."""
        params = cost_params(Algorithm.QUICK_MERGESORT_TD, 1)
        assert leading_term(1) == 0.0
        assert predict_total(1, params) == pytest.approx(linear_coefficient(params))

    def test_cost_params(self) -> None:
        """Test the cost parameters of each algorithm."""
        heap = cost_params(Algorithm.QUICK_HEAPSORT, 0)
        assert (heap.a, heap.b, heap.alpha) == (1.0, 0.967444, Fraction(1))
        bottom_up = cost_params(Algorithm.QUICK_MERGESORT_BU, 2)
        assert (bottom_up.b, bottom_up.alpha, bottom_up.t) == (-0.26, Fraction(1, 2), 2)
        assert cost_params(Algorithm.QUICK_MERGESORT_ALPHA1, 1).alpha == 1

    def test_cost_params_validation(self) -> None:
        """Test that alpha = 0 is rejected."""
        with pytest.raises(ValueError):
            CostModelParams(b=0.0, alpha=0)

    def test_published_measurements(self) -> None:
        """Test the published measurement rows."""
        assert len(PUBLISHED_MEASUREMENTS) == 10
        assert {m.k for m in PUBLISHED_MEASUREMENTS} == {1, 3}
        # The CC bound is only published for k = 1.
        assert all(
            (m.cc_bound_delta is None) == (m.k == 3) for m in PUBLISHED_MEASUREMENTS
        )


class TestModels:
    """Closed forms of the X costs."""

    def test_heap_sortdown_model(self) -> None:
        """Test the Heapsort sort-down closed form."""
        assert heap_sortdown_model(8) == 16
        assert heap_sortdown_model(10) == 24
        assert heap_sortdown_model(2) == 0

    def test_x_model(self) -> None:
        """Test the average cost models of X."""
        assert x_model(XKind.MERGE_TD, 1024) == pytest.approx(10240 - 1.24 * 1024 + 2)
        assert x_model(XKind.EXT_HEAP, 1024) == pytest.approx(10240 + 0.967444 * 1024)


class TestSubproblemCurve:
    """The expected recursed share and its shape."""

    def test_exact_value_without_sampling(self) -> None:
        """Test the recursed share for t = 0."""
        assert recursive_fraction(0, Fraction(1, 2)) == Fraction(25, 36)

    def test_dip_near_twenty(self) -> None:
        """Test that the recursed share dips near t = 20."""
        at_20 = float(recursive_fraction(20, Fraction(1, 2)))
        assert at_20 == pytest.approx(0.449124, abs=1e-5)
        assert at_20 < float(recursive_fraction(3, Fraction(1, 2)))
        assert at_20 < float(recursive_fraction(100, Fraction(1, 2)))

    @pytest.mark.parametrize(
        "t, alpha", [(0, Fraction(1, 2)), (1, Fraction(1, 2)), (2, 1)]
    )
    def test_shape_integral(self, t: int, alpha: Fraction) -> None:
        """Integrating the shape function gives back the exact share."""
        assert shape_mean(t, alpha) == pytest.approx(
            float(recursive_fraction(t, alpha)), abs=1e-8
        )

    def test_shape_density(self) -> None:
        """Test the shape function inside and outside its support."""
        assert shape_w(0.2, 1, Fraction(1, 2)) == 0.0
        assert shape_w(0.4, 0, Fraction(1, 2)) == pytest.approx(2.0)
        assert shape_w(0.9, 1, 1) == pytest.approx(12 * 0.9 * 0.1)

    def test_recursion_weights(self) -> None:
        """Test the weights of the recurrence terms."""
        weights = recursion_weights(101, 1, Fraction(1, 2))
        assert len(weights) == 101
        assert sum(weights) == 1
        assert all(w >= 0 for w in weights)
        # The sample leaves t elements on each side of the pivot.
        assert weights[0] == weights[100] == 0


class TestSkewedPivot:
    """Always pivoting at a fixed quantile."""

    def test_known_value(self) -> None:
        """Test the skewed cost at rho = 1/3."""
        assert skewed_cost_coefficient(1 / 3, 0.0) == pytest.approx(0.24511, abs=1e-5)

    def test_minimum_at_median(self) -> None:
        """Test that the median pivot is optimal."""
        grid = np.round(np.arange(1, 100) / 100, 2)
        values = [skewed_cost_coefficient(float(r), -1.24) for r in grid]
        assert grid[int(np.argmin(values))] == 0.5
        assert skewed_cost_coefficient(0.5, -1.24) == -1.24

    @pytest.mark.parametrize("rho", [0.0, 1.0, -0.5])
    def test_out_of_range(self, rho: float) -> None:
        """Test that rho outside (0, 1) is rejected."""
        with pytest.raises(ContractViolation):
            skewed_cost_coefficient(rho, 0.0)


def test_local_limit_error_rate() -> None:
    """The scaled beta-binomial PMF approaches the beta density like 1/n."""
    coarse = local_limit_error(10**3, 1)
    fine = local_limit_error(10**4, 1)
    assert fine <= 0.2 * coarse
    assert math.isfinite(coarse) and coarse > 0
