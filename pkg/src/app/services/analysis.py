"""Comparative measurements between activations: approximation error, identities and
derivative-range diagnostics. All reductions run in numpy's fixed pairwise order so
results do not depend on how a grid is produced."""

import logging
import math

import numpy as np
import numpy.typing as npt

from ..core.exceptions import ConfigurationError
from ..schemas.activation import ActivationKind, ActivationSpec
from ..schemas.analysis import DerivativeDiagnostics, DomainMetrics, ErrorReport, EvalSeries, PiecewiseApproximant
from .activation_core import eval_grad_batch, swish_as_aptx

logger = logging.getLogger(__name__)

Curve = ActivationSpec | PiecewiseApproximant

GRID_DECIMALS = 12
# finer steps would collapse under the snapping
MIN_GRID_STEP = 1e-12
DEFAULT_PIECEWISE = PiecewiseApproximant()


def make_grid(lo: float, hi: float, step: float) -> npt.NDArray[np.float64]:
    """``lo, lo + step, ...`` up to ``hi``, snapped to 12 decimals so points like 0 and -2 are exact."""
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ConfigurationError(f"Grid needs finite lo <= hi, got [{lo}, {hi}]")
    if not step >= MIN_GRID_STEP:
        raise ConfigurationError(f"Grid step must be >= {MIN_GRID_STEP}, got {step}")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    xs = np.round(lo + step * np.arange(n, dtype=np.float64), GRID_DECIMALS)
    xs[xs == 0.0] = 0.0  # drop -0.0
    return xs


def evaluate_curve(curve: Curve, xs: npt.NDArray[np.float64]) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    if isinstance(curve, PiecewiseApproximant):
        neg_values, neg_grads = eval_grad_batch(curve.negative, xs)
        pos_values, pos_grads = eval_grad_batch(curve.positive, xs)
        positive = xs >= 0.0
        return np.where(positive, pos_values, neg_values), np.where(positive, pos_grads, neg_grads)
    return eval_grad_batch(curve, xs)


def piecewise_aptx_mish_approximant(x: float) -> float:
    """APTx(1, 1/2, 1/2) on x < 0 and APTx(1, 1, 1/2) on x >= 0."""
    values, _ = evaluate_curve(DEFAULT_PIECEWISE, np.array([x], dtype=np.float64))
    return float(values[0])


def piecewise_aptx_mish_approximant_grad(x: float) -> float:
    _, grads = evaluate_curve(DEFAULT_PIECEWISE, np.array([x], dtype=np.float64))
    return float(grads[0])


def sample_series(spec: Curve, lo: float, hi: float, step: float) -> EvalSeries:
    xs = make_grid(lo, hi, step)
    values, grads = evaluate_curve(spec, xs)
    return EvalSeries(spec=spec, xs=xs.tolist(), values=values.tolist(), grads=grads.tolist())


def _metrics(xs: npt.NDArray[np.float64], err: npt.NDArray[np.float64], lo: float, hi: float) -> DomainMetrics:
    i = int(np.argmax(err))
    max_abs_err = float(err[i])
    rmse = math.sqrt(float(np.sum(err * err)) / err.size)
    return DomainMetrics(
        lo=lo,
        hi=hi,
        n_samples=int(err.size),
        max_abs_err=max_abs_err,
        arg_max_err=float(xs[i]),
        rmse=min(rmse, max_abs_err),
    )


def _error_report(a: Curve, b: Curve, lo: float, hi: float, step: float, quantity: str) -> ErrorReport:
    xs = make_grid(lo, hi, step)
    a_values, a_grads = evaluate_curve(a, xs)
    b_values, b_grads = evaluate_curve(b, xs)
    if quantity == "value":
        err = np.abs(a_values - b_values)
    else:
        err = np.abs(a_grads - b_grads)

    overall = _metrics(xs, err, lo, hi)
    negative = xs < 0.0
    report = ErrorReport(
        a=a.label,
        b=b.label,
        quantity=quantity,
        domain=(lo, hi),
        n_samples=overall.n_samples,
        max_abs_err=overall.max_abs_err,
        arg_max_err=overall.arg_max_err,
        rmse=overall.rmse,
        negative=_metrics(xs[negative], err[negative], lo, min(hi, 0.0)) if negative.any() else None,
        positive=_metrics(xs[~negative], err[~negative], max(lo, 0.0), hi) if (~negative).any() else None,
    )
    logger.debug(f"compare {report.a} vs {report.b} ({quantity}) on [{lo}, {hi}]: max={report.max_abs_err:.3e}")
    return report


def compare(a: Curve, b: Curve, lo: float, hi: float, step: float) -> ErrorReport:
    """Error metrics of |a(x) - b(x)| on the grid, split at 0 (0 belongs to the positive side)."""
    return _error_report(a, b, lo, hi, step, "value")


def compare_grads(a: Curve, b: Curve, lo: float, hi: float, step: float) -> ErrorReport:
    """As :func:`compare`, on derivatives."""
    return _error_report(a, b, lo, hi, step, "derivative")


def derivative_diagnostics(spec: Curve, lo: float, hi: float, step: float, epsilon: float = 1e-3) -> DerivativeDiagnostics:
    """Derivative range on the grid and the share of points whose slope has (nearly) vanished."""
    xs = make_grid(lo, hi, step)
    _, grads = evaluate_curve(spec, xs)
    i_min, i_max = int(np.argmin(grads)), int(np.argmax(grads))
    return DerivativeDiagnostics(
        spec=spec,
        domain=(lo, hi),
        grad_min=float(grads[i_min]),
        grad_max=float(grads[i_max]),
        grad_argmin=float(xs[i_min]),
        grad_argmax=float(xs[i_max]),
        epsilon=epsilon,
        fraction_below=float(np.count_nonzero(np.abs(grads) < epsilon)) / grads.size,
    )


def swish_identity_report(rho: float, lo: float, hi: float, step: float) -> tuple[ErrorReport, ErrorReport]:
    """Value and derivative error between APTx(1, rho/2, 1/2) and SWISH(x, rho)."""
    swish = ActivationSpec(kind=ActivationKind.SWISH, swish_rho=rho)
    aptx = swish_as_aptx(rho)
    return compare(aptx, swish, lo, hi, step), compare_grads(aptx, swish, lo, hi, step)
