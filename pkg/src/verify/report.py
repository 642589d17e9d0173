"""Verification report: one entry per identity with residual and tolerance."""

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional

from ..utils.export import render_rows, write_text

logger = logging.getLogger(__name__)

REPORT_SCHEMA = 1
CHECK_COLUMNS = ("name", "residual", "tolerance", "passed", "note")


@dataclass
class CheckResult:
    """Outcome of a single check; residual is None when the check raised."""
    name: str
    residual: Optional[float]
    tolerance: float
    passed: bool
    note: str = ""

    @classmethod
    def from_residual(cls, name: str, residual: float, tolerance: float, note: str = "") -> "CheckResult":
        residual = float(residual)
        return cls(name, residual, tolerance, residual <= tolerance, note)

    @classmethod
    def from_error(cls, name: str, tolerance: float, error: Exception) -> "CheckResult":
        return cls(name, None, tolerance, False, f"{type(error).__name__}: {error}")


@dataclass
class VerifyReport:
    """All checks of one verify run."""
    family: str
    config: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    command: str = "verify"

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list:
        return [c for c in self.checks if not c.passed]

    def add(self, check: CheckResult) -> None:
        level = logging.DEBUG if check.passed else logging.ERROR
        logger.log(level, f"check {check.name}: residual {check.residual!r} (tol {check.tolerance!r})")
        self.checks.append(check)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "family": self.family,
            "config": self.config,
            "checks": [asdict(c) for c in self.checks],
            "passed": self.passed,
        }

    def render(self, fmt: str = "json") -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2) + "\n"
        return render_rows([asdict(c) for c in self.checks], CHECK_COLUMNS, fmt)

    def write(self, path: Optional[str | Path] = None, fmt: str = "json") -> None:
        write_text(self.render(fmt), path)
