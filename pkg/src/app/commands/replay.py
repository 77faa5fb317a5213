import logging
from pathlib import Path
from typing import Annotated, Any, Optional

import click
import typer

from ..core.exceptions import ConfigurationError
from ..schemas.manifest import RunManifest

logger = logging.getLogger(__name__)


def _text(value: Any) -> str:
    # repr keeps every digit of a float
    return repr(value) if isinstance(value, float) else str(value)


def manifest_argv(command: click.Command, parameters: dict[str, Any]) -> list[str]:
    """Command-line arguments reproducing ``parameters`` for ``command``."""
    argv: list[str] = []
    for param in command.params:
        value = parameters.get(param.name)
        if value is None:
            continue
        if isinstance(param, click.Argument):
            argv.extend(_text(v) for v in (value if param.multiple else [value]))
            continue
        if param.is_flag:
            if value:
                argv.append(param.opts[0])
            elif param.secondary_opts:
                argv.append(param.secondary_opts[0])
            continue
        for item in value if param.multiple else [value]:
            argv.extend([param.opts[0], _text(item)])
    return argv


def cmd_replay(
    ctx: typer.Context,
    manifest: Annotated[Path, typer.Argument(exists=True, dir_okay=False, help="A <command>.manifest.json file.")],
    out_dir: Annotated[Optional[Path], typer.Option("--out-dir", help="Write to this directory instead.")] = None,
) -> None:
    """Re-run the command recorded in a manifest with the same parameters."""
    record = RunManifest.model_validate_json(manifest.read_text())
    root = ctx.find_root()
    command = root.command.get_command(root, record.command)
    if command is None or record.command == ctx.info_name:
        raise ConfigurationError(f"Manifest names a command that cannot be replayed: {record.command!r}")

    parameters = dict(record.parameters)
    if out_dir is not None:
        parameters["out_dir"] = str(out_dir)
    argv = manifest_argv(command, parameters)
    logger.info(f"Replaying {record.command} from {manifest}")
    command.main(args=argv, prog_name=record.command, standalone_mode=False)
