from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

UNDEFINED = "<undefined>"


@dataclass(frozen=True)
class Violation:
    law: str
    where: str
    lhs: str
    rhs: str

    def describe(self) -> str:
        return f"{self.law} at {self.where}: {self.lhs} != {self.rhs}"

    def to_dict(self) -> dict:
        return {"law": self.law, "where": self.where, "lhs": self.lhs, "rhs": self.rhs}


Report = List[Violation]


@dataclass(frozen=True)
class CheckResult:
    name: str
    violations: Tuple[Violation, ...] = ()
    notes: Tuple[Tuple[str, str], ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class CheckStats:
    checks_total: int
    checks_done: int
    failed: int
    violations: int


@dataclass
class LawCollector:
    """
    Accumulates violations for one checker run.

    Sides that could not be formed (None) count as violations and render as <undefined>.
    """

    violations: List[Violation] = field(default_factory=list)

    def equal(self, law: str, where: str, lhs: Optional[str], rhs: Optional[str]) -> bool:
        if lhs is not None and lhs == rhs:
            return True
        self.violations.append(
            Violation(law=law, where=where, lhs=lhs or UNDEFINED, rhs=rhs or UNDEFINED)
        )
        return False

    def fail(self, law: str, where: str, lhs: str, rhs: str) -> None:
        self.violations.append(Violation(law=law, where=where, lhs=lhs, rhs=rhs))

    def extend(self, report: Sequence[Violation], prefix: str = "") -> None:
        for v in report:
            if prefix:
                v = Violation(law=f"{prefix}/{v.law}", where=v.where, lhs=v.lhs, rhs=v.rhs)
            self.violations.append(v)

    def report(self) -> Report:
        return list(self.violations)
