from typing import Any

from ..core.schemas import TimestampSchema, ToolInfo


class RunManifest(TimestampSchema):
    """Sibling record of every artifact a command writes; enough to replay the command."""

    command: str
    parameters: dict[str, Any]
    tool: ToolInfo
    outputs: list[str]
