"""Matrix and result documents: parsing, validation, deterministic emission.

The matrix document is JSON with two fields: ``n`` (integer) and ``entries``,
an n-element array of n-element rows whose cells are two-element
``[re, im]`` arrays. Result documents mirror that layout and add the
coefficient/diagnostic fields. Writers format every float with 17
significant digits, so a written matrix re-parses bit-exactly and repeated
runs emit byte-identical documents.
"""

from __future__ import annotations

import json
from numbers import Real

import numpy as np

from .numkernel import SquareMatrix


class MatrixFormatError(ValueError):
    """The document does not satisfy the matrix file contract."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def parse_matrix_document(text: str) -> SquareMatrix:
    """Parse and validate a matrix document, naming the offending row on failure."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MatrixFormatError("top level must be an object")
    if "n" not in doc or "entries" not in doc:
        raise MatrixFormatError("missing required field 'n' or 'entries'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFormatError("'n' must be a positive integer")
    entries = doc["entries"]
    if not isinstance(entries, list) or len(entries) != n:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise MatrixFormatError(f"'entries' must hold {n} rows, got {got}")

    data = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise MatrixFormatError(f"row {i} must hold {n} entries, got {got}")
        for j, cell in enumerate(row):
            if (
                not isinstance(cell, list)
                or len(cell) != 2
                or not all(isinstance(x, Real) and not isinstance(x, bool) for x in cell)
            ):
                raise MatrixFormatError(
                    f"row {i}, column {j} must be a [re, im] pair of numbers"
                )
            value = complex(float(cell[0]), float(cell[1]))
            if not (np.isfinite(value.real) and np.isfinite(value.imag)):
                raise MatrixFormatError(f"row {i}, column {j} is not finite")
            data[i, j] = value
    return SquareMatrix(data)


def matrix_entries(m: SquareMatrix) -> list:
    """Nested [re, im] lists in the document layout."""
    return [
        [[float(v.real), float(v.imag)] for v in row]
        for row in m.data.tolist()
    ]


def _emit_value(value) -> str:
    if isinstance(value, bool):
        raise TypeError("booleans are not part of the document contract")
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _fmt(value)
    if isinstance(value, dict):
        inner = ", ".join(f"{json.dumps(k)}: {_emit_value(v)}" for k, v in value.items())
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_emit_value(v) for v in value) + "]"
    raise TypeError(f"cannot emit {type(value).__name__}")


def emit_document(doc: dict) -> str:
    """Serialize a result document deterministically (17 significant digits)."""
    lines = [f"  {json.dumps(k)}: {_emit_value(v)}" for k, v in doc.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def write_matrix_document(m: SquareMatrix) -> str:
    return emit_document({"n": m.n, "entries": matrix_entries(m)})
