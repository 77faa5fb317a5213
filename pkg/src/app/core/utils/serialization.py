import json
import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel

from ..config import settings
from ..schemas import ToolInfo

logger = logging.getLogger(__name__)

# 17 significant digits round-trip every float64
CSV_FORMAT = "%.17g"
MANIFEST_SUFFIX = ".manifest.json"


def ensure_dir(path: str | Path) -> Path:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_csv(path: str | Path, header: Sequence[str], columns: Sequence[npt.ArrayLike]) -> Path:
    """Write equally long columns with a header row and full-precision reals."""
    path = Path(path)
    ensure_dir(path.parent)
    table = np.column_stack([np.asarray(col, dtype=np.float64) for col in columns])
    np.savetxt(path, table, fmt=CSV_FORMAT, delimiter=",", header=",".join(header), comments="")
    logger.debug(f"wrote {table.shape[0]} rows to {path}")
    return path


def read_csv(path: str | Path) -> tuple[list[str], npt.NDArray[np.float64]]:
    path = Path(path)
    with path.open() as f:
        header = f.readline().strip().split(",")
    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return header, table


def write_json(path: str | Path, payload: BaseModel | list[BaseModel] | dict[str, Any]) -> Path:
    path = Path(path)
    ensure_dir(path.parent)
    if isinstance(payload, BaseModel):
        text = payload.model_dump_json(indent=2)
    elif isinstance(payload, list):
        text = json.dumps([item.model_dump(mode="json") for item in payload], indent=2)
    else:
        text = json.dumps(payload, indent=2)
    path.write_text(text + "\n")
    return path


def tool_info() -> ToolInfo:
    return ToolInfo(name=settings.APP_NAME, version=settings.APP_VERSION, description=settings.APP_DESCRIPTION)


def manifest_path(out_dir: str | Path, command: str) -> Path:
    return Path(out_dir) / f"{command}{MANIFEST_SUFFIX}"
