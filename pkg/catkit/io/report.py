from __future__ import annotations

import json
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from catkit.core.models import CheckResult

FORMATS = ("text", "json")


@dataclass(frozen=True)
class RunReport:
    """Outcome of one command: the echoed invocation, per-check results and free-form facts."""

    command: str
    args: Tuple[str, ...]
    checks: Tuple[CheckResult, ...]
    facts: Tuple[Tuple[str, str], ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1


def make_report(
    command: str,
    args: Sequence[str],
    checks: Sequence[CheckResult],
    facts: Sequence[Tuple[str, str]] = (),
) -> RunReport:
    return RunReport(command=command, args=tuple(args), checks=tuple(checks), facts=tuple(facts))


def build_report_data(report: RunReport) -> dict:
    checks = []
    for c in report.checks:
        checks.append(
            {
                "name": c.name,
                "passed": c.passed,
                "violations": [v.to_dict() for v in c.violations],
                "notes": [{"key": k, "value": v} for k, v in c.notes],
            }
        )
    failed = sum(1 for c in report.checks if not c.passed)
    return {
        "command": " ".join(["catkit", report.command, *report.args]).strip(),
        "checks": checks,
        "facts": [{"key": k, "value": v} for k, v in report.facts],
        "summary": {
            "checks": len(report.checks),
            "passed": len(report.checks) - failed,
            "failed": failed,
            "violations": sum(len(c.violations) for c in report.checks),
        },
        "exit_code": report.exit_code,
    }


def render_text(data: dict) -> str:
    out: List[str] = [data["command"]]
    for k in data["facts"]:
        out.append(f"  {k['key']} = {k['value']}")
    for c in data["checks"]:
        if c["passed"]:
            out.append(f"  PASS  {c['name']}")
        else:
            out.append(f"  FAIL  {c['name']} ({len(c['violations'])} violations)")
        for n in c["notes"]:
            out.append(f"        {n['key']} = {n['value']}")
        for v in c["violations"]:
            out.append(f"        - {v['law']} at {v['where']}: {v['lhs']} != {v['rhs']}")
    s = data["summary"]
    out.append(f"summary: checks={s['checks']} passed={s['passed']} failed={s['failed']} violations={s['violations']}")
    return "\n".join(out) + "\n"


def render_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render(report: RunReport, fmt: str = "text") -> str:
    data = build_report_data(report)
    if fmt == "json":
        return render_json(data)
    return render_text(data)
