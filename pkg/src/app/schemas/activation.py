"""Schemas for activation identities and their evaluated values."""

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, model_validator

from ..core.exceptions import ConfigurationError


class ActivationKind(str, Enum):
    SIGMOID = "sigmoid"
    TANH = "tanh"
    RELU = "relu"
    LEAKY_RELU = "leaky_relu"
    ELU = "elu"
    SWISH = "swish"
    MISH = "mish"
    APTX = "aptx"


# Parameters each kind reads; evaluation ignores every other field.
RELEVANT_PARAMETERS: dict[ActivationKind, tuple[str, ...]] = {
    ActivationKind.SIGMOID: (),
    ActivationKind.TANH: (),
    ActivationKind.RELU: (),
    ActivationKind.LEAKY_RELU: ("leak_alpha",),
    ActivationKind.ELU: ("elu_alpha",),
    ActivationKind.SWISH: ("swish_rho",),
    ActivationKind.MISH: (),
    ActivationKind.APTX: ("aptx_alpha", "aptx_beta", "aptx_gamma"),
}

PARAMETER_ALIASES = {
    "alpha": "aptx_alpha",
    "beta": "aptx_beta",
    "gamma": "aptx_gamma",
    "leak": "leak_alpha",
    "elu": "elu_alpha",
    "rho": "swish_rho",
}

KIND_ALIASES = {
    "leaky": ActivationKind.LEAKY_RELU,
    "leakyrelu": ActivationKind.LEAKY_RELU,
    "silu": ActivationKind.SWISH,
}


class ActivationSpec(BaseModel):
    """Identity of an activation plus its (fixed, untrained) parameters."""

    model_config = ConfigDict(frozen=True)

    kind: ActivationKind
    leak_alpha: float = 0.05
    elu_alpha: float = 2.0
    swish_rho: float = 1.0
    aptx_alpha: float = 1.0
    aptx_beta: float = 1.0
    aptx_gamma: float = 0.5

    @model_validator(mode="after")
    def check_parameters(self) -> "ActivationSpec":
        for name in ("leak_alpha", "elu_alpha", "swish_rho", "aptx_alpha", "aptx_beta", "aptx_gamma"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigurationError(f"{name} must be finite, got {getattr(self, name)!r}")

        if self.kind is ActivationKind.APTX:
            if self.aptx_beta == 0.0:
                raise ConfigurationError("APTx with beta=0 collapses to a linear map")
            if self.aptx_gamma == 0.0:
                raise ConfigurationError("APTx with gamma=0 collapses to the zero map")

        return self

    def relevant_parameters(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in RELEVANT_PARAMETERS[self.kind]}

    @property
    def label(self) -> str:
        params = self.relevant_parameters()
        if not params:
            return self.kind.value
        inner = ",".join(f"{name.split('_', 1)[1]}={value:g}" for name, value in params.items())
        return f"{self.kind.value}({inner})"

    @classmethod
    def parse(cls, text: str) -> "ActivationSpec":
        """Build a spec from ``kind[:name=value,...]``.

        Example
        -------
        >>> ActivationSpec.parse("aptx:beta=0.5").aptx_beta
        0.5
        """
        head, _, tail = text.strip().partition(":")
        name = head.strip().lower().replace("-", "_")
        try:
            kind = KIND_ALIASES.get(name.replace("_", "")) or ActivationKind(name)
        except ValueError as e:
            choices = ", ".join(k.value for k in ActivationKind)
            raise ConfigurationError(f"Unknown activation kind {head!r}; expected one of {choices}") from e

        params: dict[str, float] = {}
        for item in filter(None, (part.strip() for part in tail.split(","))):
            key, sep, value = item.partition("=")
            if not sep:
                raise ConfigurationError(f"Malformed activation parameter {item!r}; expected name=value")
            field = PARAMETER_ALIASES.get(key.strip(), key.strip())
            if field not in cls.model_fields or field == "kind":
                raise ConfigurationError(f"Unknown activation parameter {key!r}")
            try:
                params[field] = float(value)
            except ValueError as e:
                raise ConfigurationError(f"Parameter {key!r} is not a number: {value!r}") from e

        return cls(kind=kind, **params)


class ValueGrad(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    grad: float
