"""Report serialization: JSON documents, aligned text tables, CSV grids."""

import csv
import json
from pathlib import Path


def write_json(obj, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(obj, indent=2) + "\n")
    return path


def write_text(text: str, path) -> Path:
    path = Path(path)
    if not text.endswith("\n"):
        text += "\n"
    path.write_text(text)
    return path


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def fmt(value, digits: int = 4) -> str:
    """Fixed-point format for table cells; passthrough for non-numbers."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return f"{value:.{digits}f}"


def format_table(header, rows, digits: int = 4) -> str:
    """Align columns under their headers, space separated."""
    cells = [[fmt(v, digits) for v in row] for row in rows]
    widths = [
        max(len(str(h)), *(len(r[i]) for r in cells)) if cells else len(str(h))
        for i, h in enumerate(header)
    ]
    lines = [
        "  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def sweep_csv_rows(result) -> tuple[list, list]:
    """Header and rows for a SweepResult grid, row axis in the first column."""
    header = [result.row_name] + [str(v) for v in result.col_values]
    rows = [
        [rv] + [repr(float(a)) for a in result.accuracy[i]]
        for i, rv in enumerate(result.row_values)
    ]
    return header, rows
