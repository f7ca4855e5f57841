"""Verdict records shared by the obstruction and fibering checks."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Verdict(enum.Enum):
    SYMPLECTIC = "Symplectic"
    NOT_SYMPLECTIC = "NotSymplectic"
    UNKNOWN = "Unknown"


PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class TestResult:
    name: str
    status: str
    evidence: dict[str, Any] = field(default_factory=dict)

    __test__ = False  # keep pytest from collecting this class


@dataclass
class ObstructionReport:
    verdict: Verdict = Verdict.UNKNOWN
    reason: str = ""
    tests: list[TestResult] = field(default_factory=list)
    certificate: Any = None

    def add(self, name: str, status: str, **evidence: Any) -> TestResult:
        t = TestResult(name, status, evidence)
        self.tests.append(t)
        return t

    def test(self, name: str) -> TestResult | None:
        return next((t for t in self.tests if t.name == name), None)

    def decide(self, verdict: Verdict, reason: str) -> None:
        if self.verdict is Verdict.UNKNOWN and verdict is not Verdict.UNKNOWN:
            self.verdict, self.reason = verdict, reason

    @property
    def decided(self) -> bool:
        return self.verdict is not Verdict.UNKNOWN

    def render(self) -> str:
        width = max((len(t.name) for t in self.tests), default=4)
        lines = []
        for t in self.tests:
            ev = "; ".join(f"{k}={_fmt(v)}" for k, v in t.evidence.items())
            lines.append(f"{t.name:<{width}}  {t.status:<4}  {ev}".rstrip())
        lines.append(f"VERDICT: {self.verdict.value} — {self.reason or 'no theorem decides this case'}")
        return "\n".join(lines)

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason,
            "tests": [
                {"name": t.name, "status": t.status, "evidence": {k: _jsonable(v) for k, v in t.evidence.items()}}
                for t in self.tests
            ],
        }


def _fmt(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_fmt(x) for x in v) + "]"
    return str(v)


def _jsonable(v: Any) -> Any:
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return str(v)
