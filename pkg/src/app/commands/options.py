"""Option types and helpers shared by the subcommands."""

import logging
from pathlib import Path
from typing import Annotated, Any

import typer

from ..core.config import settings
from ..core.exceptions import ConfigurationError
from ..core.utils.serialization import ensure_dir, manifest_path, tool_info, write_json
from ..schemas.activation import ActivationKind, ActivationSpec
from ..schemas.analysis import PiecewiseApproximant
from ..schemas.manifest import RunManifest

logger = logging.getLogger(__name__)

PIECEWISE_NAME = "piecewise"

OutDir = Annotated[
    Path,
    typer.Option("--out-dir", envvar="APTX_OUTPUT_DIR", help="Directory for output files and the run manifest."),
]
Kind = Annotated[ActivationKind, typer.Option("--kind", case_sensitive=False, help="Activation kind.")]
Alpha = Annotated[float, typer.Option("--alpha", help="APTx alpha.")]
Beta = Annotated[float, typer.Option("--beta", help="APTx beta.")]
Gamma = Annotated[float, typer.Option("--gamma", help="APTx gamma.")]
Leak = Annotated[float, typer.Option("--leak", help="LeakyReLU negative slope.")]
EluAlpha = Annotated[float, typer.Option("--elu-alpha", help="ELU negative-branch scale.")]
Rho = Annotated[float, typer.Option("--rho", help="SWISH gate sharpness.")]

DEFAULT_OUT_DIR = Path(settings.OUTPUT_DIR)


def build_spec(
    kind: ActivationKind,
    alpha: float = 1.0,
    beta: float = 1.0,
    gamma: float = 0.5,
    leak: float = 0.05,
    elu_alpha: float = 2.0,
    rho: float = 1.0,
) -> ActivationSpec:
    return ActivationSpec(
        kind=kind,
        aptx_alpha=alpha,
        aptx_beta=beta,
        aptx_gamma=gamma,
        leak_alpha=leak,
        elu_alpha=elu_alpha,
        swish_rho=rho,
    )


def parse_curve(text: str) -> ActivationSpec | PiecewiseApproximant:
    """``kind[:name=value,...]`` or ``piecewise`` for the default APTx/MISH approximant."""
    if text.strip().lower() == PIECEWISE_NAME:
        return PiecewiseApproximant()
    return ActivationSpec.parse(text)


def parse_specs(texts: list[str] | None, default: list[str]) -> list[ActivationSpec]:
    specs = [ActivationSpec.parse(t) for t in (texts or default)]
    if not specs:
        raise ConfigurationError("No activation given")
    return specs


def record_run(ctx: typer.Context, out_dir: Path, outputs: list[Path], extra: dict[str, Any] | None = None) -> Path:
    """Write ``<command>.manifest.json`` next to the outputs of this invocation."""
    parameters = dict(ctx.params)
    parameters.update(extra or {})
    manifest = RunManifest(
        command=ctx.info_name,
        parameters=parameters,
        tool=tool_info(),
        outputs=[str(path) for path in outputs],
    )
    path = write_json(manifest_path(ensure_dir(out_dir), ctx.info_name), manifest)
    logger.debug(f"manifest written to {path}")
    return path


def fmt(value: float) -> str:
    """17 significant digits, enough to round-trip a float64."""
    return format(value, ".17g")
