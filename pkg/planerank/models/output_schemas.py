"""
Wire format shared by every subcommand: metadata plus a table.

Cells are int, Fraction, float, str or None. In text form a Fraction is always
"p/q", an int plain digits, a float its shortest round-trip repr and None the
empty string, so a cell's type can be read back from its text. String cells
must not look like numbers.
"""
from __future__ import annotations

import re
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

_INT = re.compile(r"-?\d+")
_RATIONAL = re.compile(r"-?\d+/\d+")


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


def encode_cell(cell: Any) -> str:
    if cell is None:
        return ""
    if isinstance(cell, Fraction):
        return f"{cell.numerator}/{cell.denominator}"
    if isinstance(cell, float):
        return repr(cell)
    return str(cell)


def decode_cell(text: str) -> Any:
    if text == "":
        return None
    if _INT.fullmatch(text):
        return int(text)
    if _RATIONAL.fullmatch(text):
        return Fraction(text)
    try:
        return float(text)
    except ValueError:
        return text


class OutputMeta(BaseModel):
    command: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    versions: Dict[str, str] = Field(default_factory=dict)
    provenance: Dict[str, str] = Field(default_factory=dict, description="Which result each column checks")


class OutputRecord(BaseModel):
    """A table with named columns."""
    meta: OutputMeta
    columns: List[str]
    rows: List[List[Any]]

    @field_validator("rows")
    @classmethod
    def validate_cells(cls, rows: List[List[Any]], info) -> List[List[Any]]:
        width = len(info.data.get("columns", []))
        for row in rows:
            if len(row) != width:
                raise ValueError(f"Row has {len(row)} cells, expected {width}")
            for cell in row:
                if cell is None or isinstance(cell, (Fraction, float)):
                    continue
                if isinstance(cell, bool) or not isinstance(cell, (int, str)):
                    raise ValueError(f"Unsupported cell type: {type(cell).__name__}")
                if isinstance(cell, str) and decode_cell(cell) != cell:
                    raise ValueError(f"String cell {cell!r} would read back as a number")
        return rows

    def column(self, name: str) -> List[Any]:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def find(self, **match: Any) -> List[List[Any]]:
        """Rows whose named cells equal the given values."""
        positions = {self.columns.index(k): v for k, v in match.items()}
        return [row for row in self.rows if all(row[i] == v for i, v in positions.items())]
