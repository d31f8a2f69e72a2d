from typing import Any, Optional

from pydantic import BaseModel


class CheckResult(BaseModel):
    name: str
    passed: bool
    checked: int = 0
    # first failing case, as plain data (basis indices, roots, values)
    witness: Optional[Any] = None
    detail: str = ""


class Report(BaseModel):
    subject: str = ""
    checks: list[CheckResult] = []
    info: dict[str, Any] = {}

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def get(self, name: str) -> Optional[CheckResult]:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(c.model_copy(update={"name": prefix + c.name}))
        return self

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.model_dump() for c in self.checks],
            "info": self.info,
        }


class Scan:
    """Accumulates a pass/fail scan and keeps the first witness."""

    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.witness = None
        self.detail = ""

    def ok(self, condition: bool, witness=None, detail: str = "") -> bool:
        self.checked += 1
        if not condition and self.witness is None:
            self.witness = witness if witness is not None else self.checked
            self.detail = detail
        return condition

    @property
    def passed(self) -> bool:
        return self.witness is None

    def result(self) -> CheckResult:
        return CheckResult(
            name=self.name, passed=self.passed, checked=self.checked, witness=self.witness, detail=self.detail
        )
