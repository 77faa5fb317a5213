from typing import Annotated, List, Optional

import typer

from ..core.utils.serialization import write_json
from ..schemas.activation import ActivationKind
from ..services.perf import count_mish_closed_form, count_ops
from .options import DEFAULT_OUT_DIR, OutDir, parse_specs, record_run


def cmd_cost(
    ctx: typer.Context,
    activation: Annotated[
        Optional[List[str]], typer.Option("--activation", help="kind[:name=value,...]; repeat. Default: every kind.")
    ] = None,
    out_dir: OutDir = DEFAULT_OUT_DIR,
) -> None:
    """Static operation counts of the forward and derivative expressions."""
    specs = parse_specs(activation, [kind.value for kind in ActivationKind])
    profiles = [count_ops(spec) for spec in specs]
    path = write_json(out_dir / "cost.json", profiles)
    record_run(ctx, out_dir, [path])

    typer.echo(f"{'activation':<34} {'fwd transc.':>11} {'fwd ops':>8} {'grad transc.':>12} {'grad ops':>9}")
    for profile in profiles:
        fwd, grad = profile.forward, profile.derivative
        typer.echo(
            f"{profile.label:<34} {fwd.transcendental:>11d} {_arith(fwd):>8d} {grad.transcendental:>12d} {_arith(grad):>9d}"
        )
    closed = count_mish_closed_form()
    typer.echo(f"{'mish closed-form derivative':<34} {'':>11} {'':>8} {closed.transcendental:>12d} {_arith(closed):>9d}")


def _arith(counts) -> int:
    return counts.divisions + counts.multiplications + counts.additions + counts.comparisons
