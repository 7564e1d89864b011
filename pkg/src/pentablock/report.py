"""Verification reports shared by the verifiers and the CLI."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    """Outcome of a single named check.

    ``margin`` is a signed slack: non-negative means the check holds with
    room to spare, negative means it is violated by that amount.
    """

    name: str
    passed: bool
    margin: float | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        m = self.margin
        if m is not None and not math.isfinite(m):
            m = None
        out = {"name": self.name, "passed": bool(self.passed), "margin": m}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    """Ordered collection of checks."""

    subject: str = ""
    checks: list[Check] = field(default_factory=list)

    def add(self, name, passed, margin=None, detail="") -> Check:
        c = Check(name, bool(passed), None if margin is None else float(margin), detail)
        self.checks.append(c)
        return c

    def require(self, name, margin, tol, detail="") -> Check:
        """Add a check that passes iff ``margin >= -tol``."""
        margin = float(margin)
        ok = math.isfinite(margin) and margin >= -tol or margin == math.inf
        return self.add(name, ok, margin, detail)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.margin, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def summary(self) -> str:
        lines = [f"{self.subject or 'report'}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            m = "" if c.margin is None else f" margin={c.margin:.3e}"
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}{m}")
        return "\n".join(lines)
