from __future__ import annotations

import math
from typing import Any, Dict

import numpy as np
import pandas as pd

from gmm.mixing.measures import MixednessReport, entropy_bits
from gmm.mixing.oracle import OracleResult
from gmm.qubit.bloch import BlochVector, qubit_eigenvalues, qubit_geometric_mixing
from gmm.schema.output_schema import (
    validate_certificate_payload,
    validate_distance_payload,
    validate_report_payload,
)


def _plain(obj: Any) -> Any:
    """numpy scalars -> Python numbers, tuples/arrays -> lists (recursively)."""
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_plain(v) for v in obj]
    return obj


def build_report_payload(rep: MixednessReport, *, validate: bool = True) -> Dict[str, Any]:
    """Flat JSON contract of a MixednessReport (exact field names)."""
    payload = _plain(rep.to_dict())

    if validate:
        validate_report_payload(payload)

    return payload


def build_report_table(rep: MixednessReport, *, bits: bool = False) -> pd.DataFrame:
    """Two-column (measure, value) table for --format human."""
    rows = [
        ("dim", rep.dim),
        ("purity", rep.purity),
        ("von_neumann_entropy [nats]", rep.von_neumann_entropy),
    ]
    if bits:
        rows.append(("von_neumann_entropy [bits]", entropy_bits(rep.von_neumann_entropy)))
    rows += [
        ("linear_entropy", rep.linear_entropy),
        ("geometric_measure", rep.geometric_measure),
        ("lambda_max", rep.lambda_max),
    ]
    rows += [(f"lambda_{k + 1}", v) for k, v in enumerate(rep.eigenvalues)]

    return pd.DataFrame(rows, columns=["measure", "value"])


def build_report_row(rep: MixednessReport) -> pd.DataFrame:
    """One-row table for --format csv; eigenvalues become lambda_1 .. lambda_n."""
    row: Dict[str, Any] = {k: v for k, v in rep.to_dict().items() if k != "eigenvalues"}
    for k, v in enumerate(rep.eigenvalues):
        row[f"lambda_{k + 1}"] = v
    return pd.DataFrame([row])


def build_distance_payload(d_squared: float, *, validate: bool = True) -> Dict[str, Any]:
    """d^2 and its square root (the root is for display only)."""
    payload = {"d_squared": float(d_squared), "d": math.sqrt(d_squared)}

    if validate:
        validate_distance_payload(payload)

    return payload


def build_certificate_payload(
    *,
    dim: int,
    closed_form: float,
    result: OracleResult,
    threshold: float,
    validate: bool = True,
) -> Dict[str, Any]:
    """Closed-form D against the oracle estimate, with a PASS/FAIL verdict."""
    gap = abs(result.d_estimate - closed_form)

    payload: Dict[str, Any] = {
        "dim": int(dim),
        "geometric_measure": float(closed_form),
        "d_estimate": float(result.d_estimate),
        "gap": float(gap),
        "threshold": float(threshold),
        "verdict": "PASS" if gap <= threshold else "FAIL",
        "restarts": int(result.restarts_used),
        "refine_iters": int(result.refinement_iterations),
        "seed": int(result.seed),
    }

    if validate:
        validate_certificate_payload(payload)

    return payload


def build_bloch_payload(a: BlochVector, rep: MixednessReport, *, validate: bool = True) -> Dict[str, Any]:
    """Analytic qubit values next to the eigensolver report for the same state."""
    lam1, lam2 = qubit_eigenvalues(min(a.length, 1.0))

    return {
        "bloch_vector": [a.ax, a.ay, a.az],
        "a": a.length,
        "lambda1": lam1,
        "lambda2": lam2,
        "D_analytic": qubit_geometric_mixing(min(a.length, 1.0)),
        "report": build_report_payload(rep, validate=validate),
    }
