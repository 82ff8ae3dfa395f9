from __future__ import annotations

import math
from typing import Any, Dict, Iterable

REPORT_FIELDS = (
    "dim",
    "purity",
    "von_neumann_entropy",
    "linear_entropy",
    "geometric_measure",
    "lambda_max",
    "eigenvalues",
)

DISTANCE_FIELDS = ("d_squared", "d")

CERTIFICATE_FIELDS = (
    "dim",
    "geometric_measure",
    "d_estimate",
    "gap",
    "threshold",
    "verdict",
    "restarts",
    "refine_iters",
    "seed",
)

VERDICTS = {"PASS", "FAIL"}

# invariant checks use a slightly looser bound than the computations
_SLACK = 1e-9


def _require_dict(obj: Any, name: str) -> Dict[str, Any]:
    if not isinstance(obj, dict):
        raise ValueError(f"{name} must be a dict.")
    return obj


def _require_float(obj: Any, name: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)) or not math.isfinite(obj):
        raise ValueError(f"{name} must be a finite number.")
    return float(obj)


def _require_int(obj: Any, name: str, *, minimum: int) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int) or obj < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}.")
    return obj


def _require_exact_keys(obj: Dict[str, Any], expected: Iterable[str], name: str) -> None:
    expected_set = set(expected)
    missing = expected_set - set(obj)
    extra = set(obj) - expected_set

    if missing:
        raise ValueError(f"{name} is missing keys: {sorted(missing)}.")
    if extra:
        raise ValueError(f"{name} has unexpected keys: {sorted(extra)}.")


def validate_report_payload(payload: Dict[str, Any]) -> Dict[str, Any]:
    """
    Validate a flat mixedness report.

    Rules:
    - exactly the MixednessReport field names
    - eigenvalues: `dim` numbers, descending
    - 0 <= D <= 1 - 1/n, linear_entropy = 1 - purity, S >= S_L
    """
    payload = _require_dict(payload, "report")
    _require_exact_keys(payload, REPORT_FIELDS, "report")

    dim = _require_int(payload["dim"], "report.dim", minimum=1)
    purity = _require_float(payload["purity"], "report.purity")
    entropy = _require_float(payload["von_neumann_entropy"], "report.von_neumann_entropy")
    linear = _require_float(payload["linear_entropy"], "report.linear_entropy")
    d = _require_float(payload["geometric_measure"], "report.geometric_measure")
    _require_float(payload["lambda_max"], "report.lambda_max")

    eigenvalues = payload["eigenvalues"]
    if not isinstance(eigenvalues, list) or len(eigenvalues) != dim:
        raise ValueError(f"report.eigenvalues must be a list of {dim} numbers.")
    values = [_require_float(v, f"report.eigenvalues[{i}]") for i, v in enumerate(eigenvalues)]
    if any(values[i] < values[i + 1] for i in range(dim - 1)):
        raise ValueError("report.eigenvalues must be in descending order.")

    if not -_SLACK <= d <= 1.0 - 1.0 / dim + _SLACK:
        raise ValueError(f"report.geometric_measure {d} is outside [0, 1 - 1/n].")
    if linear != 1.0 - purity:
        raise ValueError("report.linear_entropy must equal 1 - purity.")
    if entropy < linear - _SLACK:
        raise ValueError("report.von_neumann_entropy must be >= linear_entropy.")

    return payload


def validate_distance_payload(payload: Dict[str, Any]) -> Dict[str, Any]:
    payload = _require_dict(payload, "distance")
    _require_exact_keys(payload, DISTANCE_FIELDS, "distance")

    d_sq = _require_float(payload["d_squared"], "distance.d_squared")
    d = _require_float(payload["d"], "distance.d")
    if d_sq < 0.0 or d < 0.0:
        raise ValueError("distance values must be non-negative.")

    return payload


def validate_certificate_payload(payload: Dict[str, Any]) -> Dict[str, Any]:
    """
    Validate an oracle certification report.

    Rules:
    - verdict is PASS iff gap <= threshold
    - the oracle may not undercut the closed form beyond tolerance
    """
    payload = _require_dict(payload, "certificate")
    _require_exact_keys(payload, CERTIFICATE_FIELDS, "certificate")

    _require_int(payload["dim"], "certificate.dim", minimum=1)
    closed = _require_float(payload["geometric_measure"], "certificate.geometric_measure")
    estimate = _require_float(payload["d_estimate"], "certificate.d_estimate")
    gap = _require_float(payload["gap"], "certificate.gap")
    threshold = _require_float(payload["threshold"], "certificate.threshold")
    _require_int(payload["restarts"], "certificate.restarts", minimum=1)
    _require_int(payload["refine_iters"], "certificate.refine_iters", minimum=0)
    _require_int(payload["seed"], "certificate.seed", minimum=0)

    verdict = payload["verdict"]
    if verdict not in VERDICTS:
        raise ValueError(f"certificate.verdict must be one of {sorted(VERDICTS)}, got {verdict!r}.")
    if (verdict == "PASS") != (gap <= threshold):
        raise ValueError("certificate.verdict does not match gap and threshold.")
    if estimate < closed - _SLACK:
        raise ValueError("certificate.d_estimate undercuts the closed-form minimum.")

    return payload
