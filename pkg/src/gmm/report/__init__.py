from gmm.report.payloads import (
    build_certificate_payload,
    build_distance_payload,
    build_report_payload,
)

__all__ = [
    "build_certificate_payload",
    "build_distance_payload",
    "build_report_payload",
]
