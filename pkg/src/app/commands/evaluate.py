from typing import Annotated, List, Optional

import typer

from ..services.activation_core import eval_grad
from .options import Alpha, Beta, EluAlpha, Gamma, Kind, Leak, Rho, build_spec, fmt


def cmd_eval(
    kind: Kind,
    x: Annotated[Optional[List[float]], typer.Option("--x", help="Input value; repeat for several.")] = None,
    alpha: Alpha = 1.0,
    beta: Beta = 1.0,
    gamma: Gamma = 0.5,
    leak: Leak = 0.05,
    elu_alpha: EluAlpha = 2.0,
    rho: Rho = 1.0,
) -> None:
    """Print f(x) and f'(x) at full precision."""
    if not x:
        raise typer.BadParameter("at least one --x is required", param_hint="--x")
    spec = build_spec(kind, alpha, beta, gamma, leak, elu_alpha, rho)
    typer.echo("x,value,grad")
    for point in x:
        result = eval_grad(spec, point)
        typer.echo(f"{fmt(point)},{fmt(result.value)},{fmt(result.grad)}")
