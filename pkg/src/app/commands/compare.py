from typing import Annotated

import typer

from ..core.config import settings
from ..core.utils.serialization import write_json
from ..services.analysis import compare, compare_grads
from .options import DEFAULT_OUT_DIR, OutDir, fmt, parse_curve, record_run


def cmd_compare(
    ctx: typer.Context,
    a: Annotated[str, typer.Option("--a", help="First curve, kind[:name=value,...] or 'piecewise'.")],
    b: Annotated[str, typer.Option("--b", help="Second curve.")],
    out_dir: OutDir = DEFAULT_OUT_DIR,
    lo: Annotated[float, typer.Option("--lo")] = settings.GRID_LO,
    hi: Annotated[float, typer.Option("--hi")] = settings.GRID_HI,
    step: Annotated[float, typer.Option("--step")] = settings.GRID_STEP,
) -> None:
    """Approximation error between two curves, on values and on derivatives."""
    curve_a, curve_b = parse_curve(a), parse_curve(b)
    values = compare(curve_a, curve_b, lo, hi, step)
    grads = compare_grads(curve_a, curve_b, lo, hi, step)
    path = write_json(out_dir / "compare.json", [values, grads])
    record_run(ctx, out_dir, [path])

    for report in (values, grads):
        typer.echo(
            f"{report.quantity}: max_abs_err={fmt(report.max_abs_err)} at x={fmt(report.arg_max_err)} "
            f"rmse={fmt(report.rmse)}"
        )
