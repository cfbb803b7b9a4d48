"""Structured check reports and table rendering (CSV / JSON / markdown)."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

DEFAULT_PRECISION = 9


@dataclass
class CheckReport:
    """Outcome of a machine check: pass/fail plus the residual/evidence points."""

    check_name: str
    passed: bool
    max_residual: float
    details: list[tuple[Any, float]] = field(default_factory=list)

    def detail_map(self) -> dict[Any, float]:
        return dict(self.details)


@dataclass
class TableRow:
    """One output-table row: counts, expected intervals, and/or Omega values."""

    N: int
    actual: Optional[int] = None
    expected_low: Optional[float] = None
    expected_high: Optional[float] = None
    omega: Optional[float] = None
    cg: Optional[float] = None

    def __post_init__(self) -> None:
        if self.expected_low is not None and self.expected_high is not None:
            if self.expected_low > self.expected_high:
                raise ValueError("expected_low must not exceed expected_high")


def format_number(value: Any, precision: int = DEFAULT_PRECISION) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{precision}g}"
    return str(value)


def render_rows(
    rows: Sequence[dict[str, Any]],
    columns: Sequence[str],
    fmt: str = "md",
    precision: int = DEFAULT_PRECISION,
) -> str:
    """Render dict rows in the requested format with stable column order."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_number(row.get(c), precision) for c in columns])
        return buf.getvalue().rstrip("\n")
    if fmt == "json":
        out = []
        for row in rows:
            item = {}
            for c in columns:
                v = row.get(c)
                if isinstance(v, float):
                    v = float(format_number(v, precision))
                item[c] = v
            out.append(item)
        return json.dumps(out, indent=2)
    if fmt == "md":
        cells = [[format_number(row.get(c), precision) for c in columns] for row in rows]
        widths = [max(len(col), *(len(r[i]) for r in cells)) if cells else len(col) for i, col in enumerate(columns)]
        header = "| " + " | ".join(c.ljust(w) for c, w in zip(columns, widths)) + " |"
        sep = "|" + "|".join("-" * (w + 2) for w in widths) + "|"
        body = ["| " + " | ".join(r[i].ljust(widths[i]) for i in range(len(columns))) + " |" for r in cells]
        return "\n".join([header, sep, *body])
    raise ValueError(f"unknown output format {fmt!r}")


def table_rows_as_dicts(rows: Sequence[TableRow]) -> list[dict[str, Any]]:
    return [
        {
            "N": r.N,
            "actual": r.actual,
            "expected_low": r.expected_low,
            "expected_high": r.expected_high,
            "omega": r.omega,
            "cg": r.cg,
        }
        for r in rows
    ]


def render_check(report: CheckReport, fmt: str = "md", precision: int = DEFAULT_PRECISION) -> str:
    rows = [
        {"point": str(point), "value": value}
        for point, value in report.details
    ]
    head = (
        f"check: {report.check_name}\n"
        f"passed: {format_number(report.passed)}\n"
        f"max_residual: {format_number(report.max_residual, precision)}"
    )
    if not rows:
        return head
    return head + "\n" + render_rows(rows, ["point", "value"], fmt, precision)
