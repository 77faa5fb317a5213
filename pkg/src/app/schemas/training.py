"""Schemas for training configuration and per-epoch reports."""

from enum import Enum

from pydantic import BaseModel, Field, model_validator

from ..core.exceptions import ConfigurationError
from .activation import ActivationKind, ActivationSpec


class DatasetName(str, Enum):
    XOR = "xor"
    TWO_MOONS = "two_moons"
    SPIRAL = "spiral"
    SINE_REGRESSION = "sine_regression"


class LossName(str, Enum):
    MSE = "mse"
    CROSS_ENTROPY = "cross_entropy"


class TrainConfig(BaseModel):
    dataset: DatasetName = DatasetName.XOR
    n_samples: int = 200
    noise: float = 0.1
    hidden: list[int] = Field(default_factory=lambda: [8])
    output_dim: int | None = None
    epochs: int = 5000
    learning_rate: float = 0.5
    batch_size: int | None = None
    loss: LossName = LossName.MSE
    seed: int = 42
    loss_target: float = 0.05
    activation: ActivationSpec = ActivationSpec(kind=ActivationKind.APTX)

    @model_validator(mode="after")
    def check_config(self) -> "TrainConfig":
        if self.epochs < 1:
            raise ConfigurationError(f"epochs must be >= 1, got {self.epochs}")
        if not self.learning_rate > 0:
            raise ConfigurationError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.batch_size is not None and self.batch_size < 1:
            raise ConfigurationError(f"batch_size must be >= 1, got {self.batch_size}")
        if any(width < 1 for width in self.hidden):
            raise ConfigurationError(f"hidden layer widths must be >= 1, got {self.hidden}")
        if self.dataset is DatasetName.SINE_REGRESSION and self.loss is LossName.CROSS_ENTROPY:
            raise ConfigurationError("cross_entropy needs a classification dataset")
        return self


class EpochRecord(BaseModel):
    epoch: int
    loss: float
    accuracy: float | None = None
    ms: float


class TrainReport(BaseModel):
    config: TrainConfig
    layer_sizes: list[int]
    epochs: list[EpochRecord]
    epochs_to_threshold: int | None = None
    final_loss: float
    final_accuracy: float | None = None
    median_epoch_ms: float
    final_checksum: str


class EpochTimeComparison(BaseModel):
    label: str
    against: str
    runs: int
    median_epoch_ms: float
    against_median_epoch_ms: float

    @property
    def ratio(self) -> float:
        return self.median_epoch_ms / self.against_median_epoch_ms
