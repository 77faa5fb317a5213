from typing import Any

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    name: str
    passed: bool
    measured: dict[str, Any] = Field(default_factory=dict)
    threshold: float | None = None
    detail: str | None = None


class VerifyReport(BaseModel):
    checks: list[CheckResult]
    passed: bool
    failed: list[str] = Field(default_factory=list)
    filter: str | None = None
