"""Schemas for the operation-cost model and measured throughput."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from .activation import ActivationSpec


class BenchMode(str, Enum):
    FORWARD = "forward"
    DERIVATIVE = "derivative"
    FUSED = "fused"


class Precision(str, Enum):
    FLOAT32 = "float32"
    FLOAT64 = "float64"


class OpCounts(BaseModel):
    """Per-scalar-evaluation operation counts of one expression tree."""

    model_config = ConfigDict(frozen=True)

    transcendental_tanh: int = Field(default=0, ge=0)
    transcendental_exp: int = Field(default=0, ge=0)
    transcendental_log: int = Field(default=0, ge=0)
    divisions: int = Field(default=0, ge=0)
    multiplications: int = Field(default=0, ge=0)
    additions: int = Field(default=0, ge=0)
    comparisons: int = Field(default=0, ge=0)

    @property
    def transcendental(self) -> int:
        return self.transcendental_tanh + self.transcendental_exp + self.transcendental_log


class CostProfile(BaseModel):
    spec: ActivationSpec
    label: str
    forward: OpCounts
    derivative: OpCounts


class ThroughputReport(BaseModel):
    spec: ActivationSpec
    kind: str
    label: str
    mode: BenchMode
    precision: Precision
    array_len: int = Field(ge=10_000)
    reps: int = Field(ge=11)
    warmup: int = Field(ge=3)
    workers: int = 1
    elements_per_second: float = Field(gt=0)
    median_seconds: float
    checksum: str
    relative_to_mish: float | None = None
