"""Run the invariant checks and present the outcome."""

import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

import yaml
from rich.console import Console
from rich.table import Table

from bandedge.model.errors import BandedgeError
from bandedge.validation.checks import ALL_CHECKS, Check, CheckContext, CheckResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ValidationReport:
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "failures": self.failures,
            "checks": [asdict(r) for r in self.results],
        }


def _run_one(check: Check, ctx: CheckContext) -> CheckResult:
    name = check.__name__.removeprefix("check_")
    try:
        return check(ctx)
    except BandedgeError as e:
        logger.warning("Check %s raised %s: %s", name, type(e).__name__, e)
        detail = f"{type(e).__name__}: {e}"
        return CheckResult(name=name, passed=False, value=float("nan"), bound="-", detail=detail)


def run_suite(ctx: CheckContext, checks: tuple[Check, ...] = ALL_CHECKS) -> ValidationReport:
    return ValidationReport(results=tuple(_run_one(check, ctx) for check in checks))


def write_report(report: ValidationReport, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(report.to_dict(), f, sort_keys=False)


def render_report(report: ValidationReport, console: Console | None = None) -> None:
    console = console or Console()
    table = Table(title="bandedge validation")
    table.add_column("Check")
    table.add_column("Result")
    table.add_column("Value", justify="right")
    table.add_column("Bound")
    table.add_column("Detail")
    for r in report.results:
        status = "[green]pass[/green]" if r.passed else "[red]FAIL[/red]"
        table.add_row(r.name, status, f"{r.value:.3e}", r.bound, r.detail)
    console.print(table)
