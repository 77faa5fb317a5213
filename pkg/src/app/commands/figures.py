from typing import Annotated

import typer

from ..core.config import settings
from ..services.figures import write_figures
from .options import DEFAULT_OUT_DIR, OutDir, record_run


def cmd_figures(
    ctx: typer.Context,
    out_dir: OutDir = DEFAULT_OUT_DIR,
    lo: Annotated[float, typer.Option("--lo", help="Grid start.")] = settings.FIGURE_LO,
    hi: Annotated[float, typer.Option("--hi", help="Grid end.")] = settings.FIGURE_HI,
    step: Annotated[float, typer.Option("--step", help="Grid spacing.")] = settings.FIGURE_STEP,
) -> None:
    """Write the six figure series as CSV."""
    paths = write_figures(out_dir, lo, hi, step)
    record_run(ctx, out_dir, paths)
    for path in paths:
        typer.echo(str(path))
