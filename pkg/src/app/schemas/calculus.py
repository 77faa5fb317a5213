from pydantic import BaseModel, ConfigDict, Field


class DiffConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    step: float = Field(default=1e-5, gt=0)
    rel_floor: float = Field(default=1.0, gt=0)


class MinResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    argmin: float
    min_value: float
    iterations: int
    bracket: tuple[float, float]
