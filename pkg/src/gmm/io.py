from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, List, Union

import numpy as np
import pandas as pd

from gmm.errors import ParseError
from gmm.schema.constants import FLOAT_SIGNIFICANT_DIGITS
from gmm.schema.input_schema import matrix_to_payload, validate_matrix_payload
from gmm.state.densmat import SquareMatrix

PathLike = Union[str, Path]

# NOTE: json.dumps writes floats with repr() (shortest round-trip form).
# Output contracts ask for a fixed 17 significant digits, so floats are
# rendered by hand in dumps_json below.


def read_matrix_json(path: PathLike) -> SquareMatrix:
    """
    Read a matrix file {"dim": n, "re": [[...]], "im": [[...]]}.

    Any failure to produce a square finite matrix raises ParseError.
    """
    p = Path(path)
    if not p.exists():
        raise ParseError(f"Input file not found: {path}")

    try:
        with p.open("r", encoding="utf-8") as f:
            payload = json.load(f)
    except json.JSONDecodeError as exc:
        raise ParseError(f"Malformed JSON in {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8 text: {exc}") from exc
    except OSError as exc:
        raise ParseError(f"Cannot read {path}: {exc}") from exc

    return validate_matrix_payload(payload)


def write_matrix_json(path: PathLike, m: SquareMatrix) -> None:
    """Write a matrix in the format read_matrix_json accepts."""
    write_json(path, matrix_to_payload(m))


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"Cannot write non-finite float {x!r} as JSON.")
    text = format(x, f".{FLOAT_SIGNIFICANT_DIGITS}g")
    if not any(ch in text for ch in ".e"):
        text += ".0"
    return text


def _render(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end_pad = " " * (indent * level)

    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)

    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_render(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end_pad + "}"

    if isinstance(obj, (list, tuple, np.ndarray)):
        seq: List[Any] = list(obj)
        if not seq:
            return "[]"
        items = [f"{pad}{_render(v, indent, level + 1)}" for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end_pad + "]"

    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable.")


def dumps_json(obj: Any, *, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _render(obj, indent, 0)


def write_json(path: PathLike, obj: Any, *, indent: int = 2) -> None:
    """Write a Python object as JSON to disk."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_json(obj, indent=indent))
        f.write("\n")


def frame_to_csv(df: pd.DataFrame) -> str:
    """CSV text, floats at 17 significant digits."""
    return df.to_csv(index=False, float_format=f"%.{FLOAT_SIGNIFICANT_DIGITS}g")


def frame_to_text(df: pd.DataFrame) -> str:
    """Aligned plain-text table for --format human."""
    return df.to_string(index=False)
