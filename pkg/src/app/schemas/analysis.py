"""Schemas for sampled series, approximation-error reports and derivative diagnostics."""

from pydantic import BaseModel, ConfigDict, Field

from .activation import ActivationKind, ActivationSpec


class PiecewiseApproximant(BaseModel):
    """Two activations glued at x = 0; x = 0 itself belongs to the positive branch."""

    model_config = ConfigDict(frozen=True)

    negative: ActivationSpec = ActivationSpec(kind=ActivationKind.APTX, aptx_alpha=1.0, aptx_beta=0.5, aptx_gamma=0.5)
    positive: ActivationSpec = ActivationSpec(kind=ActivationKind.APTX, aptx_alpha=1.0, aptx_beta=1.0, aptx_gamma=0.5)

    @property
    def label(self) -> str:
        return f"piecewise[{self.negative.label}|{self.positive.label}]"


class EvalSeries(BaseModel):
    spec: ActivationSpec | PiecewiseApproximant
    xs: list[float]
    values: list[float]
    grads: list[float]


class DomainMetrics(BaseModel):
    lo: float
    hi: float
    n_samples: int
    max_abs_err: float = Field(ge=0)
    arg_max_err: float
    rmse: float = Field(ge=0)


class ErrorReport(BaseModel):
    a: str
    b: str
    quantity: str = "value"
    domain: tuple[float, float]
    n_samples: int
    max_abs_err: float = Field(ge=0)
    arg_max_err: float
    rmse: float = Field(ge=0)
    negative: DomainMetrics | None = None
    positive: DomainMetrics | None = None


class DerivativeDiagnostics(BaseModel):
    spec: ActivationSpec | PiecewiseApproximant
    domain: tuple[float, float]
    grad_min: float
    grad_max: float
    grad_argmin: float
    grad_argmax: float
    epsilon: float = 1e-3
    fraction_below: float = Field(ge=0.0, le=1.0)
