"""
CSV and JSON emit/parse for OutputRecord.

CSV layout: a first line "# meta <json>", the header row, then one row per
record row. JSON layout: {"meta": ..., "columns": [...], "rows": [[...]]}.
Both are deterministic: no timestamps, sorted metadata keys, "\n" line ends.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import platform
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

import numpy
import scipy

from planerank import __version__
from planerank.models.output_schemas import (
    OutputFormat,
    OutputMeta,
    OutputRecord,
    decode_cell,
    encode_cell,
)

logger = logging.getLogger(__name__)

META_PREFIX = "# meta "


def library_versions() -> dict[str, str]:
    return {
        "planerank": __version__,
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
        "python": platform.python_version(),
    }


def build_meta(
    command: str,
    parameters: dict[str, Any],
    seed: Optional[int] = None,
    provenance: Optional[dict[str, str]] = None,
) -> OutputMeta:
    return OutputMeta(
        command=command,
        parameters=parameters,
        seed=seed,
        versions=library_versions(),
        provenance=provenance or {},
    )


def _meta_json(meta: OutputMeta) -> str:
    return json.dumps(meta.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))


def _json_cell(cell: Any) -> Any:
    if isinstance(cell, Fraction):
        return encode_cell(cell)
    return cell


def emit(record: OutputRecord, fmt: Union[str, OutputFormat] = OutputFormat.CSV) -> str:
    """Serialise a record."""
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        payload = {
            "meta": json.loads(_meta_json(record.meta)),
            "columns": record.columns,
            "rows": [[_json_cell(c) for c in row] for row in record.rows],
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    buffer = io.StringIO()
    buffer.write(META_PREFIX + _meta_json(record.meta) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(record.columns)
    for row in record.rows:
        writer.writerow([encode_cell(c) for c in row])
    return buffer.getvalue()


def parse(text: str, fmt: Union[str, OutputFormat] = OutputFormat.CSV) -> OutputRecord:
    """
    Read a record back.

    Raises:
        ValueError: If the text is not in the expected layout
    """
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        payload = json.loads(text)
        rows = [
            [decode_cell(c) if isinstance(c, str) else c for c in row]
            for row in payload["rows"]
        ]
        return OutputRecord(meta=OutputMeta(**payload["meta"]), columns=payload["columns"], rows=rows)

    first, _, body = text.partition("\n")
    if not first.startswith(META_PREFIX):
        raise ValueError("CSV output must start with a '# meta' line")
    meta = OutputMeta(**json.loads(first[len(META_PREFIX):]))
    reader = csv.reader(io.StringIO(body))
    lines = list(reader)
    if not lines:
        raise ValueError("CSV output has no header row")
    columns = lines[0]
    rows = [[decode_cell(c) for c in line] for line in lines[1:]]
    return OutputRecord(meta=meta, columns=columns, rows=rows)


def write(
    record: OutputRecord,
    fmt: Union[str, OutputFormat] = OutputFormat.CSV,
    out: Optional[Union[str, Path]] = None,
    stream=None,
) -> None:
    """Write to `out`, or to `stream` (stdout by default) when no path is given."""
    text = emit(record, fmt)
    if out is None:
        (stream or sys.stdout).write(text)
        return
    path = Path(out)
    path.write_text(text, encoding="utf-8", newline="")
    logger.info("Wrote output", extra={"path": str(path), "rows": len(record.rows)})
