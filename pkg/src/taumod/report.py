"""Clause-by-clause verification reports."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import VerificationError


@dataclass(frozen=True)
class Clause:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    clauses: tuple[Clause, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.clauses)

    def failures(self) -> tuple[Clause, ...]:
        return tuple(c for c in self.clauses if not c.passed)

    def as_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.ok,
            "clauses": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.clauses
            ],
        }

    def summary(self) -> str:
        lines = [f"{self.subject}: {'pass' if self.ok else 'FAIL'}"]
        for c in self.clauses:
            mark = "ok " if c.passed else "FAIL"
            detail = f" ({c.detail})" if c.detail else ""
            lines.append(f"  [{mark}] {c.name}{detail}")
        return "\n".join(lines)


def ensure(report: VerificationReport) -> None:
    """Raise when a verified object was required but verification failed."""
    if not report.ok:
        failed = "; ".join(c.name for c in report.failures())
        raise VerificationError(f"{report.subject} failed verification: {failed}", report)
