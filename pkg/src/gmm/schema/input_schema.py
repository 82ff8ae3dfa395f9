from __future__ import annotations

import math
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from gmm.errors import OutOfRange, ParseError
from gmm.state.densmat import SquareMatrix


def _require_number(value: Any, name: str) -> float:
    if isinstance(value, bool):
        raise ParseError(f"{name} must be numeric (bool is not allowed).")
    if not isinstance(value, (int, float)):
        raise ParseError(f"{name} must be numeric, got {type(value).__name__}.")
    try:
        number = float(value)
    except OverflowError:
        raise ParseError(f"{name} is too large for a float.") from None
    if not math.isfinite(number):
        raise ParseError(f"{name} must be finite, got {value!r}.")
    return number


def _parse_grid(grid: Any, name: str, dim: int) -> List[List[float]]:
    """Validate a dim x dim list-of-rows of finite numbers."""
    if not isinstance(grid, list):
        raise ParseError(f"'{name}' must be a list of rows.")

    if len(grid) != dim:
        raise ParseError(f"'{name}' must have {dim} rows, got {len(grid)}.")

    rows: List[List[float]] = []
    for i, row in enumerate(grid):
        if not isinstance(row, list):
            raise ParseError(f"'{name}[{i}]' must be a list.")
        if len(row) != dim:
            raise ParseError(f"'{name}[{i}]' has {len(row)} entries, expected {dim} (ragged rows).")

        rows.append([_require_number(v, f"{name}[{i}][{j}]") for j, v in enumerate(row)])

    return rows


def validate_matrix_payload(payload: Dict[str, Any]) -> SquareMatrix:
    """
    Validate a matrix JSON payload and return the (unvalidated) matrix.

    Expected shape:
        {"dim": n, "re": [[...], ...], "im": [[...], ...]}

    "im" may be omitted for real matrices.
    """
    if not isinstance(payload, dict):
        raise ParseError("Matrix payload must be a JSON object (dict).")

    if "dim" not in payload:
        raise ParseError("Missing required key: 'dim'.")

    if "re" not in payload:
        raise ParseError("Missing required key: 're'.")

    dim = payload["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ParseError(f"'dim' must be a positive integer, got {dim!r}.")

    re_rows = _parse_grid(payload["re"], "re", dim)

    im_rows: Optional[List[List[float]]] = None
    if payload.get("im") is not None:
        im_rows = _parse_grid(payload["im"], "im", dim)

    return SquareMatrix.from_parts(re_rows, im_rows)


def matrix_to_payload(m: SquareMatrix) -> Dict[str, Any]:
    """Inverse of validate_matrix_payload; "im" is dropped for real matrices."""
    out: Dict[str, Any] = {
        "dim": m.dim,
        "re": np.real(m.entries).tolist(),
    }
    if np.any(np.imag(m.entries) != 0.0):
        out["im"] = np.imag(m.entries).tolist()
    return out


def parse_direction(text: str) -> Tuple[float, float, float]:
    """Parse an 'x,y,z' command-line direction; a bad one is an out-of-range parameter."""
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 3:
        raise OutOfRange(f"Direction must be 'x,y,z', got {text!r}.")

    values = []
    for axis, part in zip("xyz", parts):
        try:
            value = float(part)
        except ValueError:
            raise OutOfRange(f"Direction component {axis} is not a number: {part!r}") from None
        if not math.isfinite(value):
            raise OutOfRange(f"Direction component {axis} must be finite, got {part!r}.")
        values.append(value)

    return values[0], values[1], values[2]
