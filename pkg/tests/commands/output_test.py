import argparse
from fractions import Fraction
from pathlib import Path

import pytest

from src.commands.arguments import parse_ratio, parse_size
from src.commands.output import emit, format_cell, render
from src.schemas.cost_model import Algorithm
from src.schemas.experiment import OutputFormat


class TestFormatCell:
    """Cell formatting."""

    def test_values(self) -> None:
        """Test the formatting of floats, rationals, enums and empty cells."""
        assert format_cell(1 / 3, 3) == "0.333"
        assert format_cell(22_013_622.5, 12) == "22013622.5"
        assert format_cell(Fraction(8, 3)) == "8/3"
        assert format_cell(Algorithm.QUICK_HEAPSORT) == "QuickHeapsort"
        assert format_cell(None) == ""
        assert format_cell(42) == "42"

    def test_verdicts(self) -> None:
        """Test that booleans are shown as PASS and FAIL."""
        assert format_cell(True) == "PASS"
        assert format_cell(False) == "FAIL"


class TestRender:
    """Tables, CSV and TSV."""

    def test_table(self) -> None:
        """Test the aligned table layout."""
        text = render(["a", "bb"], [[1, 2.5]])
        assert text == "a   bb\n-  ---\n1  2.5\n"

    def test_csv(self) -> None:
        """Test the CSV rendering."""
        rows = [[Fraction(1, 3), None], [True, Algorithm.QUICK_HEAPSORT]]
        text = render(["x", "y"], rows, OutputFormat.CSV)
        assert text == "x,y\n1/3,\nPASS,QuickHeapsort\n"

    def test_tsv(self) -> None:
        """Test the TSV rendering with reduced precision."""
        text = render(["t", "q"], [[0, 1.11457]], OutputFormat.TSV, digits=3)
        assert text == "t\tq\n0\t1.11\n"


class TestEmit:
    """Where rendered text goes."""

    def test_stdout(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that text goes to stdout without a target file."""
        emit("hello\n")
        assert capsys.readouterr().out == "hello\n"

    def test_file(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that text goes to the target file only."""
        target = tmp_path / "out.csv"
        emit("a,b\n", str(target))
        assert target.read_text(encoding="utf-8") == "a,b\n"
        assert capsys.readouterr().out == ""


class TestArgumentTypes:
    """Sizes and ratios on the command line."""

    @pytest.mark.parametrize("text", ["100000", "1e5", "10^5", "10**5"])
    def test_sizes(self, text: str) -> None:
        """Test the accepted spellings of a size."""
        assert parse_size(text) == 100_000

    @pytest.mark.parametrize("text", ["1.5", "-3", "ten"])
    def test_bad_sizes(self, text: str) -> None:
        """Test that fractional, negative and non-numeric sizes are rejected."""
        with pytest.raises(argparse.ArgumentTypeError):
            parse_size(text)

    def test_ratios(self) -> None:
        """Test parsing of buffer ratios."""
        assert parse_ratio("1/2") == Fraction(1, 2)
        assert parse_ratio("0.5") == Fraction(1, 2)
        with pytest.raises(argparse.ArgumentTypeError):
            parse_ratio("half")
        with pytest.raises(argparse.ArgumentTypeError):
            parse_ratio("1/0")
