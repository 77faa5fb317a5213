from typing import Annotated

import typer

from ..core.utils.serialization import write_json
from ..services.activation_core import eval as evaluate
from ..services.calculus_tools import DEFAULT_TOL, find_min
from .options import DEFAULT_OUT_DIR, Alpha, Beta, EluAlpha, Gamma, Kind, Leak, OutDir, Rho, build_spec, fmt, record_run


def cmd_min(
    ctx: typer.Context,
    kind: Kind,
    lo: Annotated[float, typer.Option("--lo")] = -10.0,
    hi: Annotated[float, typer.Option("--hi")] = 0.0,
    tol: Annotated[float, typer.Option("--tol", help="Width of the final bracket.")] = DEFAULT_TOL,
    alpha: Alpha = 1.0,
    beta: Beta = 1.0,
    gamma: Gamma = 0.5,
    leak: Leak = 0.05,
    elu_alpha: EluAlpha = 2.0,
    rho: Rho = 1.0,
    out_dir: OutDir = DEFAULT_OUT_DIR,
) -> None:
    """Global minimum of an activation on [lo, hi]."""
    spec = build_spec(kind, alpha, beta, gamma, leak, elu_alpha, rho)
    result = find_min(lambda x: evaluate(spec, x), lo, hi, tol)
    path = write_json(out_dir / "min.json", result)
    record_run(ctx, out_dir, [path])
    typer.echo(f"argmin={fmt(result.argmin)} min={fmt(result.min_value)}")
