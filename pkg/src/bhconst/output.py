"""Rendering of result rows as an aligned table, CSV or JSON."""
from __future__ import annotations

import csv
import enum
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

FORMAT_ENV = "BHCONST_FORMAT"


class Format(enum.Enum):
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


@dataclass(frozen=True)
class OutputSpec:
    format: Format = Format.TABLE
    precision: int = 6
    destination: Optional[Path] = None

    def __post_init__(self):
        if not 1 <= self.precision <= 17:
            raise ValueError(f"precision must lie in [1, 17], got {self.precision}")
        object.__setattr__(self, "format", Format(self.format))


def default_format() -> Format:
    return Format(os.environ.get(FORMAT_ENV, Format.TABLE.value))


def _cell(v: Any, precision: int) -> Any:
    # JSON-ready value; floats are rounded to the requested significant digits
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    v = float(v)
    if not math.isfinite(v):
        return None
    return float(f"{v:.{precision}g}")


def _text(v: Any, precision: int) -> str:
    v = _cell(v, precision)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.{precision}g}"
    return str(v)


def render(command: str, columns: Sequence[str], rows: Sequence[dict], spec: OutputSpec,
           summary: Optional[dict] = None) -> str:
    if spec.format is Format.JSON:
        payload = {
            "command": command,
            "columns": list(columns),
            "rows": [{c: _cell(r.get(c), spec.precision) for c in columns} for r in rows],
        }
        if summary is not None:
            payload["summary"] = {k: _cell(v, spec.precision) for k, v in summary.items()}
        return json.dumps(payload, indent=2) + "\n"
    cells = [[_text(r.get(c), spec.precision) for c in columns] for r in rows]
    if spec.format is Format.CSV:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows(cells)
        return buf.getvalue()
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in cells]
    if summary:
        lines.append("")
        lines += [f"{k}: {_text(v, spec.precision)}" for k, v in summary.items()]
    return "\n".join(lines) + "\n"


def emit(text: str, spec: OutputSpec) -> None:
    if spec.destination is None:
        sys.stdout.write(text)
    else:
        Path(spec.destination).write_text(text)
