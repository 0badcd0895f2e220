"""Structured pass/fail reports for the executable verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class Claim:
    """One verified statement: scanned ``checked`` instances, all must hold."""

    name: str
    ok: bool
    checked: int
    counterexample: Optional[tuple] = None
    detail: str = ""


@dataclass
class VerificationReport:
    title: str
    claims: list[Claim] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.claims)

    def add(
        self,
        name: str,
        ok: bool,
        checked: int,
        counterexample: Optional[tuple] = None,
        detail: str = "",
    ) -> None:
        self.claims.append(
            Claim(name=name, ok=ok, checked=checked, counterexample=counterexample, detail=detail)
        )

    def summary(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.claims:
            line = f"  [{'pass' if c.ok else 'FAIL'}] {c.name} (checked {c.checked})"
            if c.counterexample is not None:
                line += f" counterexample={c.counterexample}"
            if c.detail:
                line += f" -- {c.detail}"
            lines.append(line)
        for key, value in self.notes.items():
            lines.append(f"  [note] {key}: {value}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "claims": [
                {
                    "name": c.name,
                    "ok": c.ok,
                    "checked": c.checked,
                    "counterexample": list(c.counterexample) if c.counterexample else None,
                    "detail": c.detail,
                }
                for c in self.claims
            ],
            "notes": self.notes,
        }
