import logging
import os
from logging.handlers import RotatingFileHandler

from .config import settings

LOG_DIR = os.path.realpath(settings.LOG_DIR)
if not os.path.exists(LOG_DIR):
    os.makedirs(LOG_DIR)

LOG_FILE_PATH = os.path.join(LOG_DIR, "aptx_bench.log")

LOGGING_LEVEL = logging.getLevelName(settings.LOG_LEVEL.upper())
LOGGING_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

logging.basicConfig(level=LOGGING_LEVEL, format=LOGGING_FORMAT)

file_handler = RotatingFileHandler(
    LOG_FILE_PATH, maxBytes=settings.LOG_FILE_MAX_BYTES, backupCount=settings.LOG_FILE_BACKUP_COUNT
)
file_handler.setLevel(LOGGING_LEVEL)
file_handler.setFormatter(logging.Formatter(LOGGING_FORMAT))

logging.getLogger("").addHandler(file_handler)


def set_level(level: str) -> None:
    """Change the root and file handler level after startup (CLI --log-level)."""
    numeric = logging.getLevelName(level.upper())
    logging.getLogger("").setLevel(numeric)
    file_handler.setLevel(numeric)
