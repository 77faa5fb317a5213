import os

from pydantic_settings import BaseSettings, SettingsConfigDict

current_file_dir = os.path.dirname(os.path.realpath(__file__))
env_path = os.path.join(current_file_dir, "..", "..", ".env")


class AppSettings(BaseSettings):
    APP_NAME: str = "aptx-bench"
    APP_DESCRIPTION: str | None = "Activation kernels, verification suites and benchmarks for APTx, MISH and SWISH."
    APP_VERSION: str = "0.1.0"


class OutputSettings(BaseSettings):
    OUTPUT_DIR: str = "./artifacts"


class GridSettings(BaseSettings):
    GRID_LO: float = -10.0
    GRID_HI: float = 10.0
    GRID_STEP: float = 1e-3

    # figure series span the visible range of the plots
    FIGURE_LO: float = -5.0
    FIGURE_HI: float = 5.0
    FIGURE_STEP: float = 1e-2


class BenchSettings(BaseSettings):
    BENCH_ARRAY_LEN: int = 10_000_000
    BENCH_REPS: int = 11
    BENCH_WARMUP: int = 3
    BENCH_SEED: int = 20240
    BENCH_PRECISION: str = "float32"
    BENCH_WORKERS: int = 1


class TrainSettings(BaseSettings):
    TRAIN_SEED: int = 42
    TRAIN_EPOCHS: int = 5000
    TRAIN_LEARNING_RATE: float = 0.5
    TRAIN_LOSS_TARGET: float = 0.05


class VerifySettings(BaseSettings):
    VERIFY_SEED: int = 1234
    VERIFY_POINTS: int = 1000
    VERIFY_DIFF_STEP: float = 1e-5


class LoggingSettings(BaseSettings):
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = os.path.join(current_file_dir, "..", "logs")
    LOG_FILE_MAX_BYTES: int = 10485760
    LOG_FILE_BACKUP_COUNT: int = 5


class Settings(
    AppSettings,
    OutputSettings,
    GridSettings,
    BenchSettings,
    TrainSettings,
    VerifySettings,
    LoggingSettings,
):
    model_config = SettingsConfigDict(env_file=env_path, env_prefix="APTX_", extra="ignore")


settings = Settings()
