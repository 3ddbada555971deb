"""Tolerance-tagged findings and their JSON / text renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Finding:
    name: str
    value: float
    tol: float
    passed: bool
    locus: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "value": float(self.value),
            "tol": float(self.tol),
            "pass": bool(self.passed),
            "locus": self.locus,
        }


@dataclass
class VerificationReport:
    """Ordered findings; the report passes iff every finding passes."""

    findings: list[Finding] = field(default_factory=list)
    pass_verdict: str = "pass"
    fail_verdict: str = "fail"

    def add(self, name: str, value: float, tol: float, passed: bool, locus: str = "") -> Finding:
        f = Finding(name, float(value), float(tol), bool(passed), locus)
        self.findings.append(f)
        return f

    def at_most(self, name: str, value: float, tol: float, locus: str = "") -> Finding:
        """Record a violation magnitude that must not exceed ``tol``."""
        return self.add(name, value, tol, value <= tol, locus)

    def above(self, name: str, value: float, tol: float, locus: str = "") -> Finding:
        """Record a quantity that must strictly exceed ``tol``."""
        return self.add(name, value, tol, value > tol, locus)

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for f in other.findings:
            self.findings.append(Finding(prefix + f.name, f.value, f.tol, f.passed, f.locus))

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.findings)

    @property
    def verdict(self) -> str:
        return self.pass_verdict if self.passed else self.fail_verdict

    def failures(self) -> list[Finding]:
        return [f for f in self.findings if not f.passed]

    def finding(self, name: str) -> Finding:
        for f in self.findings:
            if f.name == name:
                return f
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"findings": [f.as_dict() for f in self.findings], "verdict": self.verdict}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        rows = [("name", "value", "tol", "pass", "locus")]
        for f in self.findings:
            rows.append((f.name, f"{f.value:.6g}", f"{f.tol:.1e}", "PASS" if f.passed else "FAIL", f.locus))
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = []
        for r in rows:
            head = "  ".join(c.ljust(w) for c, w in zip(r[:4], widths))
            lines.append((head + "  " + r[4]).rstrip())
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"
