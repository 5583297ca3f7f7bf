"""Verification reports shared by every suite."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

MAX_WITNESSES = 20


@dataclass
class Report:
    """Outcome of one verification suite.

    ``failures`` holds at most :data:`MAX_WITNESSES` witnesses, each a dict
    with ``case``, ``expected`` and ``got``; ``n_failed`` counts all of them.
    """

    suite: str
    anchor: str = ""
    checks: int = 0
    n_failed: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.n_failed == 0

    def check(self, ok: bool, case: Any, expected: Any = None, got: Any = None) -> bool:
        self.checks += 1
        if not ok:
            self.fail(case, expected, got)
        return ok

    def fail(self, case: Any, expected: Any = None, got: Any = None) -> None:
        self.n_failed += 1
        if len(self.failures) < MAX_WITNESSES:
            self.failures.append({"case": _plain(case), "expected": _plain(expected),
                                  "got": _plain(got)})

    def merge(self, other: "Report", prefix: str = "") -> None:
        self.checks += other.checks
        self.n_failed += other.n_failed
        for w in other.failures:
            if len(self.failures) < MAX_WITNESSES:
                w = dict(w)
                if prefix:
                    w["case"] = f"{prefix}: {w['case']}"
                self.failures.append(w)

    def to_json(self) -> dict:
        out = {"suite": self.suite, "passed": self.passed, "checks": self.checks,
               "failures": self.failures}
        if self.anchor:
            out["anchor"] = self.anchor
        if self.n_failed > len(self.failures):
            out["failures_total"] = self.n_failed
        if self.details:
            out["details"] = _plain(self.details)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"[{status}] {self.suite}: {self.checks} checks, {self.n_failed} failures"
        if self.anchor:
            line += f" ({self.anchor})"
        return line


def _plain(value: Any) -> Any:
    # JSON-safe rendering of exact objects in witnesses
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)
