class ActivationBenchError(Exception):
    def __init__(self, message: str = "Activation benchmark error.") -> None:
        self.message = message
        super().__init__(self.message)


class ConfigurationError(ActivationBenchError):
    def __init__(self, message: str = "Invalid configuration.") -> None:
        super().__init__(message)


class DomainError(ActivationBenchError):
    def __init__(self, message: str = "Input outside the supported domain.", index: int | None = None) -> None:
        self.index = index
        if index is not None:
            message = f"{message} (element {index})"
        super().__init__(message)


class OracleError(ActivationBenchError):
    def __init__(self, message: str = "Numerical oracle sampled a non-finite value.") -> None:
        super().__init__(message)


class BenchmarkError(ActivationBenchError):
    def __init__(self, message: str = "Benchmark could not produce a reliable measurement.") -> None:
        super().__init__(message)


class TrainingError(ActivationBenchError):
    def __init__(self, message: str = "Training diverged.", epoch: int | None = None) -> None:
        self.epoch = epoch
        if epoch is not None:
            message = f"{message} (epoch {epoch})"
        super().__init__(message)


class StaleCacheError(ActivationBenchError):
    def __init__(self, message: str = "Forward cache does not belong to the current model state.") -> None:
        super().__init__(message)


class VerificationFailed(ActivationBenchError):
    def __init__(self, failed: list[str] | None = None, message: str = "Verification failed.") -> None:
        self.failed = failed or []
        if self.failed:
            message = f"{message} Failing checks: {', '.join(self.failed)}"
        super().__init__(message)
