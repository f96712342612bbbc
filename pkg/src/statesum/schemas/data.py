from pydantic import Field

from ..core.schemas import FrozenSchema, TextReport


class CheckOutcome(FrozenSchema):
    name: str
    checked: int = Field(ge=0)
    failures: int = Field(default=0, ge=0)
    vacuous: int = Field(default=0, ge=0)
    exhaustive: bool = True

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def __str__(self) -> str:
        status = "ok" if self.passed else f"FAILED ({self.failures})"
        scope = "exhaustive" if self.exhaustive else "sampled"
        return f"{self.name} {status} checked={self.checked} vacuous={self.vacuous} {scope}"


class VerificationReport(TextReport):
    passed: bool
    K: str
    checks: list[CheckOutcome]
    failures: list[str] = Field(default_factory=list)

    def outcome(self, name: str) -> CheckOutcome:
        return next(check for check in self.checks if check.name == name)
