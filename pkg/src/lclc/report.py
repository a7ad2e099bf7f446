"""Uniform result record emitted by every verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
NA = "n/a"
INFO = "info"


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named inequality or identity check.

    margin is oriented so that larger is safer: for one-sided inequalities
    it is the slack, for identities it is minus the absolute discrepancy
    plus the tolerance. params records the inputs that produced the row.
    """

    name: str
    lhs: float
    rhs: float
    margin: float
    verdict: str
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL


def from_margin(name: str, lhs: float, rhs: float, margin: float,
                tol: float, params: dict[str, Any] | None = None) -> CheckReport:
    """Build a pass/fail report from a signed slack and its tolerance."""
    verdict = PASS if margin >= -tol else FAIL
    return CheckReport(name, float(lhs), float(rhs), float(margin), verdict,
                       dict(params or {}))


def info(name: str, value: float, params: dict[str, Any] | None = None) -> CheckReport:
    """Row for a computed value that is not itself a check."""
    return CheckReport(name, float(value), float("nan"), float("nan"), INFO,
                       dict(params or {}))
