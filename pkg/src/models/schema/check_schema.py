from typing import Callable, List, Literal

from pydantic import BaseModel, Field

Depth = Literal["quick", "full"]


class CheckOutcome(BaseModel):
    """What a verification check reports back to the suite."""

    passed: bool
    worst_residual: float = 0.0
    detail: str = ""


class VerificationCheck(BaseModel):
    name: str
    description: str
    depth: Depth
    func: Callable[..., CheckOutcome]


class CheckResult(BaseModel):
    name: str
    description: str
    passed: bool
    worst_residual: float
    detail: str = ""
    duration_s: float = Field(0.0, ge=0)


class VerificationReport(BaseModel):
    depth: Depth
    version: str
    results: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [result for result in self.results if not result.passed]
