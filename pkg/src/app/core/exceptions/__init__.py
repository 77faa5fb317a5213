# ruff: noqa
from .activation_exceptions import (
    ActivationBenchError,
    ConfigurationError,
    DomainError,
    OracleError,
    BenchmarkError,
    TrainingError,
    StaleCacheError,
    VerificationFailed,
)
