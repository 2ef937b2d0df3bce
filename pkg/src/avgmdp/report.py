"""Delimited records and verdict documents.

Records are comma-separated with a header row, '.' as decimal point and the
``inf`` literal for +∞. Floats are written with 17 significant digits so
reruns produce byte-identical files.
"""

import csv
import io
import json
import math
from collections.abc import Iterable, Mapping, Sequence
from enum import Enum
from pathlib import Path
from typing import Any

from mpmath import mpf

from avgmdp.model.extreal import INF_LITERAL, format_ext
from avgmdp.model.io import key_of


def format_cell(value: object) -> str:
    """Render one record field."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, mpf):
        value = float(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if value == -math.inf:
            return f"-{INF_LITERAL}"
        return format_ext(value)
    if isinstance(value, int | str):
        return str(value)
    if isinstance(value, Enum):
        return str(value.value)
    return key_of(value)


def format_records(
    records: Sequence[Mapping[str, object]], columns: Sequence[str]
) -> str:
    """CSV text with a header row."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow(format_cell(record[column]) for column in columns)
    return buffer.getvalue()


def _plain(value: Any) -> Any:  # noqa: ANN401
    """JSON-ready copy: floats keep 17 digits, +∞ becomes ``"inf"``."""
    if isinstance(value, bool) or value is None or isinstance(value, int | str):
        return value
    if isinstance(value, mpf):
        value = float(value)
    if isinstance(value, float):
        return value if math.isfinite(value) else format_cell(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Mapping):
        return {key_of(k): _plain(v) for k, v in value.items()}
    if isinstance(value, Iterable):
        return [_plain(item) for item in value]
    return key_of(value)


def format_verdict(document: Mapping[str, Any]) -> str:
    """Structured verdict as sorted, indented JSON."""
    return json.dumps(_plain(document), indent=2, sort_keys=True) + "\n"


class ReportWriter:
    """Sends report files to a directory, or to stdout when none is given."""

    def __init__(self, out: Path | None) -> None:
        self.out = out
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)

    def emit(self, name: str, text: str) -> Path | None:
        """Write ``text`` as ``name``.

        Returns:
            The written path, or None when printing to stdout
        """
        if self.out is None:
            print(f"# {name}")
            print(text, end="")
            return None
        path = self.out / name
        path.write_text(text, encoding="utf-8")
        return path

    def records(
        self, name: str, records: Sequence[Mapping[str, object]], columns: Sequence[str]
    ) -> Path | None:
        """Emit delimited records."""
        return self.emit(name, format_records(records, columns))

    def verdict(self, name: str, document: Mapping[str, Any]) -> Path | None:
        """Emit a verdict document."""
        return self.emit(name, format_verdict(document))
