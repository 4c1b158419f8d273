from fractions import Fraction

import pytest

from src.commands.curves import Curve, curve_points, grid
from src.commands.oracle import oracle_rows
from src.commands.predict import prediction_rows
from src.commands.tables import LIMIT_CELL, estimate_rows, penalty_rows
from src.errors import ContractViolation
from src.schemas.cost_model import Algorithm


class TestPredict:
    """Closed-form predictions."""

    def test_quickheapsort_at_a_million(self) -> None:
        """Test the QuickHeapsort predictions at n = 10^6 for t = 0 and 1."""
        rows = prediction_rows(Algorithm.QUICK_HEAPSORT, [10**6], [0, 1])
        assert [(r.n, r.t) for r in rows] == [(10**6, 0), (10**6, 1)]
        assert rows[0].predicted == pytest.approx(22_013_622, abs=20)
        assert rows[1].predicted == pytest.approx(21_405_982, abs=20)

    def test_overrides(self) -> None:
        """Test that explicit alpha and b replace the algorithm's defaults."""
        (row,) = prediction_rows(
            Algorithm.QUICK_HEAPSORT, [1000], [1], alpha=Fraction(1, 2), b=-1.24
        )
        assert row.linear_coeff == pytest.approx(-0.8350, abs=5e-5)
        assert row.predicted == pytest.approx(row.leading_term + 1000 * row.linear_coeff)

    def test_invalid_override(self) -> None:
        """Test that an alpha above one is rejected."""
        with pytest.raises(ValueError):
            prediction_rows(Algorithm.QUICK_HEAPSORT, [1000], [1], alpha=Fraction(2))


class TestTables:
    """The penalty and estimate tables."""

    def test_penalty_rows(self) -> None:
        """Test the formatted penalty table rows."""
        rows = penalty_rows()
        assert rows[0][:5] == ["1", "1.1146", "0.5070", "0.3210", "0.2328"]
        assert rows[0][-1] == LIMIT_CELL
        assert rows[1][0] == "1/2"
        assert rows[1][1] == "0.9120"

    def test_estimate_rows(self) -> None:
        """Test the recomputed estimate against the published columns."""
        rows = estimate_rows()
        assert len(rows) == 10
        row = next(r for r in rows if r[1] == 10**5 and r[2] == 1)
        source, n, k, observed, predicted, delta, published, cc, dw = row
        assert predicted == pytest.approx(1_869_169, abs=20)
        assert delta == predicted - observed
        assert delta == pytest.approx(published, abs=20)
        assert (cc, dw) == (90_795, 88_795)

    def test_earlier_bounds_are_looser(self) -> None:
        """Test that both earlier bounds overshoot by more than the estimate."""
        for row in estimate_rows():
            delta, cc, dw = row[5], row[7], row[8]
            assert abs(delta) < dw
            # Only the k = 1 rows have a CC bound.
            assert (cc is None) == (row[2] == 3)
            if cc is not None:
                assert dw < cc


class TestCurves:
    """Plot data."""

    def test_grid(self) -> None:
        """Test that the grid includes both end points."""
        assert grid(0, 1, 0.25).tolist() == [0.0, 0.25, 0.5, 0.75, 1.0]
        assert len(grid(0.01, 0.99, 0.01)) == 99

    @pytest.mark.parametrize("bounds", [(1, 0, 0.1), (0, 1, 0), (0, 1, -1)])
    def test_empty_grid(self, bounds: tuple) -> None:  # type: ignore[type-arg]
        """Test that empty or non-advancing grids are rejected."""
        with pytest.raises(ContractViolation):
            grid(*bounds)

    def test_penalty(self) -> None:
        """Test the penalty curve at its first two points."""
        points = curve_points(Curve.PENALTY, [0, 1])
        assert [x for x, _ in points] == [0, 1]
        assert points[0][1] == pytest.approx(1.1146, abs=5e-5)

    def test_recursive_fraction(self) -> None:
        """Test the recursed share with and without sampling."""
        points = dict(curve_points(Curve.RECURSIVE_FRACTION, [0.0, 20.0]))
        assert points[0] == pytest.approx(25 / 36)
        assert points[20] == pytest.approx(0.449124, abs=1e-5)

    def test_skewed(self) -> None:
        """Test that the skewed cost at the median is the linear term of X."""
        assert curve_points(Curve.SKEWED, [0.5], b=-1.24) == [(0.5, -1.24)]

    def test_weights(self) -> None:
        """Test that the recursion weights form a distribution."""
        points = curve_points(Curve.WEIGHTS, n=11, t=0)
        assert [j for j, _ in points] == list(range(11))
        assert sum(w for _, w in points) == pytest.approx(1.0)


class TestOracleRows:
    """Recurrence next to enumeration."""

    def test_small_sizes_agree(self) -> None:
        """Test that rows above the enumeration limit have no verdict."""
        rows = oracle_rows(Algorithm.QUICK_MERGESORT_TD, 5, 0, enumeration_limit=4)
        assert [r.n for r in rows] == list(range(6))
        assert rows[3].recurrence == Fraction(8, 3)
        assert all(r.passed for r in rows[:5])
        assert rows[5].enumeration is None
        assert rows[5].passed is None
