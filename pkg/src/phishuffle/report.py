"""Structured pass/fail reports shared by the verification routines."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Claim:
    name: str
    passed: bool
    detail: str = ""
    residual: Any = None  # exact failing value, formatted on output

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if self.residual is not None:
            out["residual"] = str(self.residual)
        return out


@dataclass
class Report:
    name: str
    claims: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def __bool__(self):
        return self.passed

    def add(self, name: str, passed: bool, detail: str = "", residual=None) -> Claim:
        c = Claim(name, bool(passed), detail, residual)
        self.claims.append(c)
        return c

    def first_failure(self):
        return next((c for c in self.claims if not c.passed), None)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "claims": [c.to_json() for c in self.claims], "notes": list(self.notes)}

    def to_text(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.claims:
            line = f"  [{'pass' if c.passed else 'FAIL'}] {c.name}"
            if c.detail:
                line += f" -- {c.detail}"
            if not c.passed and c.residual is not None:
                line += f" (residual: {c.residual})"
            lines.append(line)
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)
