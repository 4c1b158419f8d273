"""
Rendering of report rows as an aligned table, CSV or TSV.
"""

import csv
import io
import sys
from enum import Enum
from fractions import Fraction
from typing import Any, Optional, Sequence

from loguru import logger as log

from src.config.settings import settings
from src.schemas.experiment import OutputFormat


def format_cell(value: Any, digits: int = settings.float_significant_digits) -> str:
    """Floats get `digits` significant digits; counts and rationals stay exact."""
    if isinstance(value, bool):
        return "PASS" if value else "FAIL"
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return str(value.value)
    return "" if value is None else str(value)


def render(
    headers: Sequence[str],
    rows: Sequence[Sequence[Any]],
    output_format: OutputFormat = OutputFormat.TABLE,
    digits: int = settings.float_significant_digits,
) -> str:
    """
    Render rows in the requested format.

    Args:
        headers: Column names.
        rows: Row values; floats, Fractions and enums are formatted by `format_cell`.
        output_format: Table, CSV or TSV.
        digits: Significant digits for floats.

    Returns:
        str: The rendered text, newline terminated.
    """
    cells = [[format_cell(v, digits) for v in row] for row in rows]
    if output_format is OutputFormat.TABLE:
        widths = [
            max([len(h)] + [len(row[i]) for row in cells]) for i, h in enumerate(headers)
        ]
        lines = [
            "  ".join(h.rjust(w) for h, w in zip(headers, widths)),
            "  ".join("-" * w for w in widths),
        ]
        lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
        return "\n".join(lines) + "\n"

    buffer = io.StringIO()
    delimiter = "," if output_format is OutputFormat.CSV else "\t"
    writer = csv.writer(buffer, delimiter=delimiter, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(cells)
    return buffer.getvalue()


def emit(text: str, out: Optional[str] = None) -> None:
    """Write `text` to the file `out`, or to stdout when no file is given."""
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    log.info("Wrote {}", out)
