"""Invariant suite behind ``bandedge validate``."""

from bandedge.validation.checks import ALL_CHECKS, CheckContext, CheckResult
from bandedge.validation.report import ValidationReport, render_report, run_suite, write_report

__all__ = [
    "ALL_CHECKS",
    "CheckContext",
    "CheckResult",
    "ValidationReport",
    "render_report",
    "run_suite",
    "write_report",
]
