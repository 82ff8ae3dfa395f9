# src/gmm/__main__.py

from __future__ import annotations

import argparse
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional

from gmm.errors import DomainViolation, InternalDisagreement, NoConvergence, ParseError
from gmm.io import dumps_json, frame_to_csv, frame_to_text, read_matrix_json
from gmm.mixing.measures import report
from gmm.mixing.oracle import minimize_over_pure
from gmm.qubit.bloch import BlochVector, density_from_bloch
from gmm.qubit.sweep import bloch_sweep
from gmm.report.payloads import (
    build_bloch_payload,
    build_certificate_payload,
    build_distance_payload,
    build_report_payload,
    build_report_row,
    build_report_table,
)
from gmm.schema.constants import (
    DEFAULT_TOLERANCES,
    GMM_NAME,
    GMM_VERSION,
    ORACLE_DEFAULTS,
    OUTPUT_FORMATS,
    Tolerances,
)
from gmm.schema.input_schema import parse_direction
from gmm.state.densmat import DensityMatrix, hs_distance_sq, validate_density

logger = logging.getLogger("gmm")

# ------------------------------------------------------------
# Exit codes (stable)
# ------------------------------------------------------------
EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_DOMAIN = 2
EXIT_PARSE = 3
EXIT_ORACLE_FAIL = 4


def _tolerances(args: argparse.Namespace) -> Tolerances:
    return replace(
        DEFAULT_TOLERANCES,
        herm=args.tol_herm,
        trace=args.tol_trace,
        psd=args.tol_psd,
        norm=args.tol_norm,
    )


def _emit(args: argparse.Namespace, text: str) -> None:
    """Print to standard output, or write to --output when given."""
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_density(path: str, tolerances: Tolerances) -> DensityMatrix:
    return validate_density(read_matrix_json(path), tolerances)


def _human_kv(payload: Dict[str, Any]) -> str:
    width = max(len(k) for k in payload)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in payload.items())


# ------------------------------------------------------------
# validate
# ------------------------------------------------------------

def cmd_validate(args: argparse.Namespace) -> int:
    matrix = read_matrix_json(args.input)

    try:
        rho = validate_density(matrix, _tolerances(args))
    except DomainViolation as exc:
        logger.warning("%s: %s", exc.kind, exc)
        payload: Dict[str, Any] = {
            "status": "invalid",
            "dim": matrix.dim,
            "violation": exc.kind,
            "deviation": exc.deviation if math.isfinite(exc.deviation) else None,
            "where": exc.where,
            "message": str(exc),
        }
        if args.format == "human":
            _emit(args, f"invalid: {exc.kind}: {exc}")
        else:
            _emit(args, dumps_json(payload))
        return EXIT_DOMAIN

    if args.format == "human":
        _emit(args, f"valid (n={rho.dim})")
    else:
        _emit(args, dumps_json({"status": "valid", "dim": rho.dim}))
    return EXIT_OK


# ------------------------------------------------------------
# analyze
# ------------------------------------------------------------

def cmd_analyze(args: argparse.Namespace) -> int:
    tolerances = _tolerances(args)
    rep = report(_load_density(args.input, tolerances), tolerances)

    if args.format == "human":
        _emit(args, frame_to_text(build_report_table(rep, bits=args.bits)))
    elif args.format == "csv":
        _emit(args, frame_to_csv(build_report_row(rep)))
    else:
        _emit(args, dumps_json(build_report_payload(rep)))
    return EXIT_OK


# ------------------------------------------------------------
# distance
# ------------------------------------------------------------

def cmd_distance(args: argparse.Namespace) -> int:
    tolerances = _tolerances(args)
    rho1 = _load_density(args.first, tolerances)
    rho2 = _load_density(args.second, tolerances)

    payload = build_distance_payload(hs_distance_sq(rho1, rho2, tolerances))

    if args.format == "human":
        _emit(args, _human_kv(payload))
    else:
        _emit(args, dumps_json(payload))
    return EXIT_OK


# ------------------------------------------------------------
# oracle
# ------------------------------------------------------------

def cmd_oracle(args: argparse.Namespace) -> int:
    tolerances = _tolerances(args)
    rho = _load_density(args.input, tolerances)

    closed_form = report(rho, tolerances).geometric_measure
    result = minimize_over_pure(
        rho,
        restarts=args.restarts,
        refine_iters=args.refine_iters,
        seed=args.seed,
        tolerances=tolerances,
    )

    payload = build_certificate_payload(
        dim=rho.dim,
        closed_form=closed_form,
        result=result,
        threshold=args.threshold,
    )

    if args.format == "human":
        _emit(args, _human_kv(payload))
    else:
        _emit(args, dumps_json(payload))

    if payload["verdict"] != "PASS":
        logger.warning("Oracle gap %.3e exceeds threshold %.1e.", payload["gap"], args.threshold)
        return EXIT_ORACLE_FAIL
    return EXIT_OK


# ------------------------------------------------------------
# bloch / bloch-sweep
# ------------------------------------------------------------

def cmd_bloch(args: argparse.Namespace) -> int:
    tolerances = _tolerances(args)
    a = BlochVector.along(parse_direction(args.dir), args.a)
    rep = report(density_from_bloch(a, tolerances), tolerances)

    payload = build_bloch_payload(a, rep)

    if args.format == "human":
        flat = {k: v for k, v in payload.items() if k != "report"}
        _emit(args, _human_kv(flat) + "\n\n" + frame_to_text(build_report_table(rep)))
    else:
        _emit(args, dumps_json(payload))
    return EXIT_OK


def cmd_bloch_sweep(args: argparse.Namespace) -> int:
    df = bloch_sweep(
        args.steps,
        parse_direction(args.dir),
        grid_check=args.grid_check,
        theta_steps=args.theta_steps,
        phi_steps=args.phi_steps,
        tolerances=_tolerances(args),
    )

    if args.format == "human":
        _emit(args, frame_to_text(df))
    elif args.format == "json":
        _emit(args, dumps_json(df.to_dict(orient="records")))
    else:
        _emit(args, frame_to_csv(df))
    return EXIT_OK


# ------------------------------------------------------------
# Parser
# ------------------------------------------------------------

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level for diagnostics on standard error (default: WARNING).",
    )
    common.add_argument(
        "--tol-herm",
        type=float,
        default=DEFAULT_TOLERANCES.herm,
        help="Hermiticity tolerance (default: %(default)s).",
    )
    common.add_argument(
        "--tol-trace",
        type=float,
        default=DEFAULT_TOLERANCES.trace,
        help="Unit-trace tolerance (default: %(default)s).",
    )
    common.add_argument(
        "--tol-psd",
        type=float,
        default=DEFAULT_TOLERANCES.psd,
        help="Admitted negative eigenvalue magnitude (default: %(default)s).",
    )
    common.add_argument(
        "--tol-norm",
        type=float,
        default=DEFAULT_TOLERANCES.norm,
        help="State-vector normalization tolerance (default: %(default)s).",
    )
    common.add_argument(
        "--output",
        default=None,
        help="Write the result to this path instead of standard output.",
    )
    return common


def _add_format(p: argparse.ArgumentParser, *, default: str, choices: List[str]) -> None:
    p.add_argument(
        "--format",
        default=default,
        choices=choices,
        help=f"Output format (default: {default}).",
    )


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()

    parser = argparse.ArgumentParser(
        prog="gmm",
        description=f"{GMM_NAME}: minimal Hilbert-Schmidt distance from a quantum state to the pure states.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {GMM_VERSION}",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    # ---------------------------
    # validate
    # ---------------------------
    p_val = sub.add_parser(
        "validate",
        parents=[common],
        help="Check that a matrix file holds a valid density matrix.",
    )
    p_val.add_argument("input", help="Path to matrix JSON file.")
    _add_format(p_val, default="json", choices=["json", "human"])
    p_val.set_defaults(func=cmd_validate)

    # ---------------------------
    # analyze
    # ---------------------------
    p_an = sub.add_parser(
        "analyze",
        parents=[common],
        help="Purity, entropies and geometric measure D of a density matrix.",
    )
    p_an.add_argument("input", help="Path to matrix JSON file.")
    _add_format(p_an, default="json", choices=list(OUTPUT_FORMATS))
    p_an.add_argument(
        "--bits",
        action="store_true",
        help="With --format human, also show the entropy in bits.",
    )
    p_an.set_defaults(func=cmd_analyze)

    # ---------------------------
    # distance
    # ---------------------------
    p_dist = sub.add_parser(
        "distance",
        parents=[common],
        help="Squared Hilbert-Schmidt distance between two density matrices.",
    )
    p_dist.add_argument("first", help="Path to the first matrix JSON file.")
    p_dist.add_argument("second", help="Path to the second matrix JSON file.")
    _add_format(p_dist, default="json", choices=["json", "human"])
    p_dist.set_defaults(func=cmd_distance)

    # ---------------------------
    # oracle
    # ---------------------------
    p_or = sub.add_parser(
        "oracle",
        parents=[common],
        help="Certify the closed-form D against direct minimization over pure states.",
    )
    p_or.add_argument("input", help="Path to matrix JSON file.")
    p_or.add_argument(
        "--restarts",
        type=int,
        default=ORACLE_DEFAULTS.restarts,
        help="Random restarts (default: %(default)s).",
    )
    p_or.add_argument(
        "--refine-iters",
        type=int,
        default=ORACLE_DEFAULTS.refine_iters,
        help="Power-map refinement steps per restart (default: %(default)s).",
    )
    p_or.add_argument(
        "--seed",
        type=int,
        default=ORACLE_DEFAULTS.seed,
        help="Random seed (default: %(default)s).",
    )
    p_or.add_argument(
        "--threshold",
        type=float,
        default=ORACLE_DEFAULTS.pass_threshold,
        help="Largest |D_closed - D_oracle| that passes (default: %(default)s).",
    )
    _add_format(p_or, default="json", choices=["json", "human"])
    p_or.set_defaults(func=cmd_oracle)

    # ---------------------------
    # bloch
    # ---------------------------
    p_bl = sub.add_parser(
        "bloch",
        parents=[common],
        help="Qubit state from a Bloch vector: analytic and computed measures.",
    )
    p_bl.add_argument("--a", type=float, required=True, help="Bloch vector length in [0, 1].")
    p_bl.add_argument("--dir", default="0,0,1", help="Bloch direction 'x,y,z' (default: 0,0,1).")
    _add_format(p_bl, default="json", choices=["json", "human"])
    p_bl.set_defaults(func=cmd_bloch)

    # ---------------------------
    # bloch-sweep
    # ---------------------------
    p_sw = sub.add_parser(
        "bloch-sweep",
        parents=[common],
        help="Measures along a Bloch radius, a = k/(steps-1).",
    )
    p_sw.add_argument("--steps", type=int, required=True, help="Number of lengths (>= 2).")
    p_sw.add_argument("--dir", default="0,0,1", help="Bloch direction 'x,y,z' (default: 0,0,1).")
    p_sw.add_argument(
        "--grid-check",
        action="store_true",
        help="Add D_grid from the exhaustive qubit grid oracle.",
    )
    p_sw.add_argument(
        "--theta-steps",
        type=int,
        default=ORACLE_DEFAULTS.theta_steps,
        help="Grid points in theta (default: %(default)s).",
    )
    p_sw.add_argument(
        "--phi-steps",
        type=int,
        default=ORACLE_DEFAULTS.phi_steps,
        help="Grid points in phi (default: %(default)s).",
    )
    _add_format(p_sw, default="csv", choices=list(OUTPUT_FORMATS))
    p_sw.set_defaults(func=cmd_bloch_sweep)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        return int(args.func(args))
    except ParseError as exc:
        sys.stderr.write(f"{exc.kind}: {exc}\n")
        return EXIT_PARSE
    except (DomainViolation, NoConvergence) as exc:
        sys.stderr.write(f"{exc.kind}: {exc}\n")
        return EXIT_DOMAIN
    except InternalDisagreement as exc:
        sys.stderr.write(f"{exc.kind}: {exc}\n")
        return EXIT_INTERNAL
    except ValueError as exc:
        # e.g. a negative --tol-* value rejected by Tolerances
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
