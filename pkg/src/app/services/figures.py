"""Data series behind the six activation figures, written as CSV."""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import numpy.typing as npt

from ..core.config import settings
from ..core.utils.serialization import write_csv
from ..schemas.activation import ActivationKind, ActivationSpec
from .activation_core import eval_grad_batch
from .analysis import make_grid

logger = logging.getLogger(__name__)

APTX = ActivationSpec(kind=ActivationKind.APTX, aptx_alpha=1.0, aptx_beta=1.0, aptx_gamma=0.5)
TANH = ActivationSpec(kind=ActivationKind.TANH)
SIGMOID = ActivationSpec(kind=ActivationKind.SIGMOID)
RELU = ActivationSpec(kind=ActivationKind.RELU)
LEAKY_RELU = ActivationSpec(kind=ActivationKind.LEAKY_RELU, leak_alpha=0.05)
ELU = ActivationSpec(kind=ActivationKind.ELU, elu_alpha=2.0)
SWISH = ActivationSpec(kind=ActivationKind.SWISH, swish_rho=1.0)
MISH = ActivationSpec(kind=ActivationKind.MISH)


@dataclass(frozen=True)
class Curve:
    column: str
    spec: ActivationSpec
    derivative: bool = False


# figure name -> curves, in column order after x
FIGURES: dict[str, tuple[Curve, ...]] = {
    "fig1_aptx": (Curve("aptx", APTX),),
    "fig2_aptx_derivative": (Curve("aptx_grad", APTX, derivative=True),),
    "fig3_tanh_sigmoid_derivatives": (
        Curve("tanh_grad", TANH, derivative=True),
        Curve("sigmoid_grad", SIGMOID, derivative=True),
    ),
    "fig4_relu_family": (Curve("relu", RELU), Curve("leaky_relu", LEAKY_RELU), Curve("elu", ELU)),
    "fig5_swish_mish_derivatives": (
        Curve("swish_grad", SWISH, derivative=True),
        Curve("mish_grad", MISH, derivative=True),
    ),
    "fig6_mish_aptx_derivatives": (
        Curve("mish_grad", MISH, derivative=True),
        Curve("aptx_grad", APTX, derivative=True),
    ),
}


def figure_table(name: str, xs: npt.NDArray[np.float64]) -> tuple[list[str], list[npt.NDArray[np.float64]]]:
    header = ["x"]
    columns = [xs]
    for curve in FIGURES[name]:
        values, grads = eval_grad_batch(curve.spec, xs)
        header.append(curve.column)
        columns.append(grads if curve.derivative else values)
    return header, columns


def write_figures(
    out_dir: str | Path,
    lo: float = settings.FIGURE_LO,
    hi: float = settings.FIGURE_HI,
    step: float = settings.FIGURE_STEP,
) -> list[Path]:
    """One ``<figure>.csv`` per entry of :data:`FIGURES`, all on the same grid."""
    xs = make_grid(lo, hi, step)
    paths = []
    for name in FIGURES:
        header, columns = figure_table(name, xs)
        paths.append(write_csv(Path(out_dir) / f"{name}.csv", header, columns))
    logger.info(f"Wrote {len(paths)} figure series on [{lo}, {hi}] step {step} to {out_dir}")
    return paths
