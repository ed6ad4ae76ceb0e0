"""Matrix interchange format.

A matrix travels as a JSON document with fields ``rows``, ``cols`` and
``entries``, where ``entries`` is a row-major list of two-element
``[re, im]`` arrays of decimal floats.  Serialisation uses Python's
shortest-roundtrip float repr, so a dump/parse cycle is bit-exact.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .errors import InputError


def matrix_to_doc(m: np.ndarray) -> dict[str, Any]:
    """Encode a matrix as an interchange document (a plain dict)."""
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    rows, cols = m.shape
    entries = [[float(z.real), float(z.imag)] for z in m.reshape(-1)]
    return {"rows": rows, "cols": cols, "entries": entries}


def matrix_from_doc(doc: Any) -> np.ndarray:
    """Decode and validate an interchange document."""
    if not isinstance(doc, dict):
        raise InputError("matrix document must be a JSON object")
    try:
        rows = int(doc["rows"])
        cols = int(doc["cols"])
        entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"matrix document missing or malformed field: {exc}") from exc
    if rows < 1 or cols < 1:
        raise InputError("rows and cols must each be at least 1")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise InputError(
            f"expected {rows * cols} entries for a {rows}x{cols} matrix, "
            f"got {len(entries) if isinstance(entries, list) else type(entries).__name__}"
        )
    flat = np.empty(rows * cols, dtype=complex)
    for k, entry in enumerate(entries):
        if (
            not isinstance(entry, (list, tuple))
            or len(entry) != 2
            or not all(isinstance(part, (int, float)) for part in entry)
        ):
            raise InputError(f"entry {k} is not a two-element [re, im] array")
        re, im = float(entry[0]), float(entry[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise InputError(f"entry {k} is not finite")
        flat[k] = complex(re, im)
    return flat.reshape(rows, cols)


def dumps(m: np.ndarray) -> str:
    return json.dumps(matrix_to_doc(m))


def loads(text: str) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from exc
    return matrix_from_doc(doc)


def load_path(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def dump_path(m: np.ndarray, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(m))
        fh.write("\n")
