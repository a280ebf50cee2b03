"""
CSV artifacts: optional '#' provenance line, header, rows.

Floats are written with 6 significant digits and every line ends in '\\n', so
identical rows give identical bytes on every platform.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable, Optional, Sequence

from ..errors import ContractError
from .base import ArtifactWriter


class Comment(str):
    """A row that is written as a '# ...' line instead of CSV fields."""


def format_value(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


class CsvArtifact(ArtifactWriter):

    def __init__(
        self,
        schema: Sequence[str],
        rows: Iterable[Sequence | Comment],
        provenance: Optional[str] = None,
    ) -> None:
        self.schema = list(schema)
        self.rows = list(rows)
        self.provenance = provenance
        for i, row in enumerate(self.rows):
            if not isinstance(row, Comment) and len(row) != len(self.schema):
                raise ContractError(
                    f"row {i} has {len(row)} fields, schema {','.join(self.schema)} has {len(self.schema)}"
                )

    def render(self) -> str:
        buf = io.StringIO()
        if self.provenance:
            buf.write(f"# {self.provenance}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.schema)
        for row in self.rows:
            if isinstance(row, Comment):
                buf.write(f"# {row}\n")
            else:
                writer.writerow([format_value(v) for v in row])
        return buf.getvalue()


def emit_csv(
    rows: Iterable[Sequence | Comment],
    schema: Sequence[str],
    path: Path | str,
    provenance: Optional[str] = None,
) -> Path:
    return CsvArtifact(schema, rows, provenance).write(path)
