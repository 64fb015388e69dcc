"""Structured pass/fail records shared by the exact and numeric checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class VerificationReport:
    check: str
    passed: bool
    detail: str = ""
    counterexample: dict[str, Any] | None = None
    data: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"check": self.check, "pass": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        out.update(self.data)
        return out


def combine(check: str, reports: list[VerificationReport]) -> VerificationReport:
    """Fold many reports into one that fails on the first failing member."""
    for r in reports:
        if not r.passed:
            return VerificationReport(
                check, False, f"{r.check}: {r.detail}", r.counterexample,
                {"cases": len(reports)})
    return VerificationReport(check, True, f"{len(reports)} cases", None, {"cases": len(reports)})
