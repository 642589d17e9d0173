"""CSV/JSON writers shared by the CLI exports."""

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")


def _plain(value: Any) -> Any:
    """Convert numpy scalars to builtin types so both writers render them alike."""
    if hasattr(value, "item") and callable(value.item):
        return value.item()
    return value


def render_rows(
    rows: Sequence[dict],
    columns: Sequence[str],
    fmt: str = "csv",
    meta: Optional[dict] = None
) -> str:
    """
    Render table rows in a fixed column order.

    Args:
        rows: Row dicts; missing keys are written as empty cells / null.
        columns: Column order (the CSV header).
        fmt: 'csv' or 'json'.
        meta: Extra top-level keys for the JSON document.

    Returns:
        The rendered document as text.
    """
    if fmt not in FORMATS:
        raise ValueError(f"Unknown format: {fmt}")

    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow(["" if row.get(c) is None else _plain(row.get(c)) for c in columns])
        return buffer.getvalue()

    document = {"schema": 1}
    if meta:
        document.update({k: _plain(v) for k, v in meta.items()})
    document["columns"] = list(columns)
    document["rows"] = [{c: _plain(row.get(c)) for c in columns} for row in rows]
    return json.dumps(document, indent=2) + "\n"


def write_text(text: str, path: Optional[str | Path] = None) -> None:
    """Write to a file, or stdout when path is None or '-'."""
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {path}")


def write_rows(
    rows: Sequence[dict],
    columns: Sequence[str],
    path: Optional[str | Path] = None,
    fmt: str = "csv",
    meta: Optional[dict] = None
) -> None:
    """Render rows and write them out (see render_rows)."""
    write_text(render_rows(rows, columns, fmt, meta), path)
