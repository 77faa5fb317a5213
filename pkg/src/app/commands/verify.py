from typing import Annotated, Optional

import typer

from ..core.exceptions import VerificationFailed
from ..core.utils.serialization import write_json
from ..schemas.activation import ActivationKind
from ..services.verification import run_verification
from .options import DEFAULT_OUT_DIR, OutDir, record_run


def cmd_verify(
    ctx: typer.Context,
    out_dir: OutDir = DEFAULT_OUT_DIR,
    filter: Annotated[  # noqa: A002
        Optional[str], typer.Option("--filter", help="Comma-separated check-name prefixes to run.")
    ] = None,
    mutate_kind: Annotated[
        Optional[ActivationKind],
        typer.Option("--mutate-kind", case_sensitive=False, help="Perturb this kind's derivative."),
    ] = None,
    mutate_delta: Annotated[float, typer.Option("--mutate-delta", help="Perturbation added by --mutate-kind.")] = 0.01,
) -> None:
    """Run the invariant suite; exit 2 when any check fails."""
    report = run_verification(filter, mutate_kind, mutate_delta)
    path = write_json(out_dir / "verify.json", report)
    record_run(ctx, out_dir, [path])

    for check in report.checks:
        typer.echo(f"{'PASS' if check.passed else 'FAIL'}  {check.name}")
    typer.echo(f"{len(report.checks) - len(report.failed)}/{len(report.checks)} checks passed")
    if not report.passed:
        raise VerificationFailed(report.failed)
