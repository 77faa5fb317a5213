"""Numerical oracles kept independent of the analytic derivatives they validate.

``central_diff`` works elementwise, so it accepts scalars or numpy arrays as long
as ``f`` does. ``find_min`` only needs a scalar function; ``grid_min`` needs a
vectorised one.
"""

import logging
import math
from collections.abc import Callable

import numpy as np
import numpy.typing as npt

from ..core.exceptions import ConfigurationError, OracleError
from ..schemas.calculus import DiffConfig, MinResult

logger = logging.getLogger(__name__)

ScalarFunction = Callable[[float], float]
ArrayFunction = Callable[[npt.NDArray[np.float64]], npt.NDArray[np.float64]]

GOLDEN_RATIO = (math.sqrt(5.0) - 1.0) / 2.0
DEFAULT_TOL = 1e-10
SCAN_POINTS = 1000
MAX_GOLDEN_ITERATIONS = 500


def central_diff(f: Callable, x: float | npt.NDArray[np.float64], cfg: DiffConfig = DiffConfig()):
    """(f(x + h) - f(x - h)) / 2h."""
    h = cfg.step
    upper = f(x + h)
    lower = f(x - h)
    if not (np.all(np.isfinite(upper)) and np.all(np.isfinite(lower))):
        raise OracleError(f"central_diff sampled a non-finite value around x={x!r}")
    result = (np.asarray(upper) - np.asarray(lower)) / (2.0 * h)
    if np.ndim(result) == 0:
        return float(result)
    return result


def relative_error(analytic, numeric, cfg: DiffConfig = DiffConfig()):
    """|analytic - numeric| / max(rel_floor, |analytic|), elementwise."""
    analytic = np.asarray(analytic, dtype=np.float64)
    numeric = np.asarray(numeric, dtype=np.float64)
    err = np.abs(analytic - numeric) / np.maximum(cfg.rel_floor, np.abs(analytic))
    if err.ndim == 0:
        return float(err)
    return err


def _checked(f: ScalarFunction, x: float) -> float:
    value = float(f(x))
    if not math.isfinite(value):
        raise OracleError(f"Minimiser sampled a non-finite value f({x!r}) = {value!r}")
    return value


def find_min(f: ScalarFunction, lo: float, hi: float, tol: float = DEFAULT_TOL) -> MinResult:
    """Grid scan to bracket the smallest sample, then golden-section refinement.

    Parameters
    ----------
    f: Callable[[float], float]
        Function continuous on ``[lo, hi]``.
    lo, hi: float
        Search interval, ``lo < hi``.
    tol: float
        Width of the final bracket.

    Returns
    -------
    MinResult
        The refined minimiser. Global only when the scan lands in the basin of the global
        minimum, which holds for the single negative lobe of the activations here.
    """
    if not lo < hi:
        raise ConfigurationError(f"find_min needs lo < hi, got [{lo}, {hi}]")
    if not tol > 0:
        raise ConfigurationError(f"find_min needs tol > 0, got {tol}")

    grid = np.linspace(lo, hi, SCAN_POINTS)
    samples = np.array([_checked(f, float(x)) for x in grid])
    best = int(np.argmin(samples))
    a = float(grid[max(best - 1, 0)])
    b = float(grid[min(best + 1, SCAN_POINTS - 1)])

    c = b - GOLDEN_RATIO * (b - a)
    d = a + GOLDEN_RATIO * (b - a)
    fc = _checked(f, c)
    fd = _checked(f, d)

    iterations = 0
    while b - a > tol and iterations < MAX_GOLDEN_ITERATIONS:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN_RATIO * (b - a)
            fc = _checked(f, c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN_RATIO * (b - a)
            fd = _checked(f, d)
        iterations += 1

    argmin, min_value = (c, fc) if fc <= fd else (d, fd)
    logger.debug(f"find_min on [{lo}, {hi}]: argmin={argmin!r} after {iterations} golden-section steps")
    return MinResult(argmin=argmin, min_value=min_value, iterations=iterations, bracket=(a, b))


def grid_min(f: ArrayFunction, lo: float, hi: float, step: float, chunk: int = 1_000_000) -> MinResult:
    """Brute-force minimum over ``lo, lo + step, ...`` evaluated in vectorised chunks."""
    if not lo < hi:
        raise ConfigurationError(f"grid_min needs lo < hi, got [{lo}, {hi}]")
    if not step > 0:
        raise ConfigurationError(f"grid_min needs step > 0, got {step}")

    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    best_x, best_value = lo, math.inf
    for start in range(0, n, chunk):
        xs = lo + step * np.arange(start, min(start + chunk, n), dtype=np.float64)
        values = np.asarray(f(xs), dtype=np.float64)
        if not np.isfinite(values).all():
            raise OracleError("grid_min sampled a non-finite value")
        i = int(np.argmin(values))
        if values[i] < best_value:
            best_x, best_value = float(xs[i]), float(values[i])

    return MinResult(
        argmin=best_x,
        min_value=best_value,
        iterations=n,
        bracket=(max(lo, best_x - step), min(hi, best_x + step)),
    )
