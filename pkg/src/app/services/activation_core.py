"""Scalar and batch evaluation of every supported activation, with analytic derivatives.

Each :class:`ActivationKernel` is a vectorised numpy implementation working in the
dtype of its input, so the same code serves the 64-bit correctness suites and the
32-bit throughput benchmarks. The scalar entry points run the batch kernel on a
one-element array, which keeps scalar and batch results bit-identical.
"""

import logging
from collections.abc import Sequence
from functools import lru_cache

import numpy as np
import numpy.typing as npt

from ..core.exceptions import ConfigurationError, DomainError
from ..schemas.activation import ActivationKind, ActivationSpec, ValueGrad

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.floating]

# Above this softplus switches to x + log1p(exp(-x)).
SOFTPLUS_SWITCH = 20.0

MISH_CLOSED_FORM_LIMIT = 200.0
MISH_CLOSED_FORM_SWITCH = 30.0


def _sigmoid(x: FloatArray) -> FloatArray:
    # exp only ever sees -|x|, so neither branch overflows
    out = np.empty_like(x)
    pos = x >= 0.0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _finite_scale(z: FloatArray) -> FloatArray:
    # an overflowed beta*x or rho*x meets a zero slope factor; inf * 0 must stay 0
    return np.where(np.isinf(z), z.dtype.type(0.0), z)


class ActivationKernel:
    """Vectorised forward / derivative / fused evaluation for one ActivationSpec."""

    def __init__(self, spec: ActivationSpec) -> None:
        self.spec = spec

    def forward(self, x: FloatArray) -> FloatArray:
        raise NotImplementedError

    def fused(self, x: FloatArray) -> tuple[FloatArray, FloatArray]:
        raise NotImplementedError

    def derivative(self, x: FloatArray) -> FloatArray:
        return self.fused(x)[1]


class SigmoidKernel(ActivationKernel):
    def forward(self, x: FloatArray) -> FloatArray:
        return _sigmoid(x)

    def fused(self, x: FloatArray) -> tuple[FloatArray, FloatArray]:
        s = self.forward(x)
        return s, s * (1.0 - s)


class TanhKernel(ActivationKernel):
    def forward(self, x: FloatArray) -> FloatArray:
        return np.tanh(x)

    def fused(self, x: FloatArray) -> tuple[FloatArray, FloatArray]:
        t = np.tanh(x)
        return t, 1.0 - t * t

    def derivative(self, x: FloatArray) -> FloatArray:
        t = np.tanh(x)
        return 1.0 - t * t


class ReluKernel(ActivationKernel):
    # x <= 0 takes the zero branch, including its slope at the kink.
    def forward(self, x: FloatArray) -> FloatArray:
        return np.maximum(x, 0.0)

    def fused(self, x: FloatArray) -> tuple[FloatArray, FloatArray]:
        return self.forward(x), self.derivative(x)

    def derivative(self, x: FloatArray) -> FloatArray:
        return (x > 0.0).astype(x.dtype)


class LeakyReluKernel(ActivationKernel):
    def __init__(self, spec: ActivationSpec) -> None:
        super().__init__(spec)
        self.leak = spec.leak_alpha

    def forward(self, x: FloatArray) -> FloatArray:
        return np.where(x > 0.0, x, self.leak * x)

    def fused(self, x: FloatArray) -> tuple[FloatArray, FloatArray]:
        return self.forward(x), self.derivative(x)

    def derivative(self, x: FloatArray) -> FloatArray:
        one = x.dtype.type(1.0)
        return np.where(x > 0.0, one, x.dtype.type(self.leak))


class EluKernel(ActivationKernel):
    def __init__(self, spec: ActivationSpec) -> None:
        super().__init__(spec)
        self.scale = spec.elu_alpha

    def _negative_branch(self, x: FloatArray) -> FloatArray:
        return self.scale * np.expm1(np.minimum(x, 0.0))

    def forward(self, x: FloatArray) -> FloatArray:
        return np.where(x > 0.0, x, self._negative_branch(x))

    def fused(self, x: FloatArray) -> tuple[FloatArray, FloatArray]:
        neg = self._negative_branch(x)
        value = np.where(x > 0.0, x, neg)
        # alpha * e^x == alpha * (e^x - 1) + alpha
        grad = np.where(x > 0.0, x.dtype.type(1.0), neg + self.scale)
        return value, grad


class SwishKernel(ActivationKernel):
    """x * sigmoid(rho * x); rho = 1 is the plain self-gated form."""

    def __init__(self, spec: ActivationSpec) -> None:
        super().__init__(spec)
        self.rho = spec.swish_rho

    def _slope_scale(self, z: FloatArray) -> FloatArray:
        return z if self.rho == 1.0 else _finite_scale(z)

    def _gate(self, x: FloatArray) -> tuple[FloatArray, FloatArray]:
        z = x if self.rho == 1.0 else self.rho * x
        return z, _sigmoid(z)

    def forward(self, x: FloatArray) -> FloatArray:
        _, s = self._gate(x)
        return x * s

    def fused(self, x: FloatArray) -> tuple[FloatArray, FloatArray]:
        z, s = self._gate(x)
        return x * s, s + self._slope_scale(z) * s * (1.0 - s)

    def derivative(self, x: FloatArray) -> FloatArray:
        z, s = self._gate(x)
        return s + self._slope_scale(z) * s * (1.0 - s)


class MishKernel(ActivationKernel):
    """x * tanh(softplus(x)) with an overflow-free softplus."""

    def _softplus(self, x: FloatArray) -> FloatArray:
        large = x > SOFTPLUS_SWITCH
        sp = np.log1p(np.exp(np.where(large, -x, x)))
        return np.where(large, x + sp, sp)

    def forward(self, x: FloatArray) -> FloatArray:
        return x * np.tanh(self._softplus(x))

    def fused(self, x: FloatArray) -> tuple[FloatArray, FloatArray]:
        sp = self._softplus(x)
        t = np.tanh(sp)
        # sigmoid(x) == 1 - exp(-softplus(x))
        gate = -np.expm1(-sp)
        return x * t, t + x * (1.0 - t * t) * gate


class AptxKernel(ActivationKernel):
    """(alpha + tanh(beta * x)) * gamma * x, sech^2 taken as 1 - tanh^2."""

    def __init__(self, spec: ActivationSpec) -> None:
        super().__init__(spec)
        self.alpha = spec.aptx_alpha
        self.beta = spec.aptx_beta
        self.gamma = spec.aptx_gamma

    def _scaled(self, x: FloatArray) -> FloatArray:
        return x if self.beta == 1.0 else self.beta * x

    def _slope_scale(self, z: FloatArray) -> FloatArray:
        return z if self.beta == 1.0 else _finite_scale(z)

    def forward(self, x: FloatArray) -> FloatArray:
        t = np.tanh(self._scaled(x))
        return (self.alpha + t) * self.gamma * x

    def fused(self, x: FloatArray) -> tuple[FloatArray, FloatArray]:
        z = self._scaled(x)
        t = np.tanh(z)
        return (self.alpha + t) * self.gamma * x, self.gamma * (self.alpha + t + self._slope_scale(z) * (1.0 - t * t))

    def derivative(self, x: FloatArray) -> FloatArray:
        z = self._scaled(x)
        t = np.tanh(z)
        return self.gamma * (self.alpha + t + self._slope_scale(z) * (1.0 - t * t))


KERNELS: dict[ActivationKind, type[ActivationKernel]] = {
    ActivationKind.SIGMOID: SigmoidKernel,
    ActivationKind.TANH: TanhKernel,
    ActivationKind.RELU: ReluKernel,
    ActivationKind.LEAKY_RELU: LeakyReluKernel,
    ActivationKind.ELU: EluKernel,
    ActivationKind.SWISH: SwishKernel,
    ActivationKind.MISH: MishKernel,
    ActivationKind.APTX: AptxKernel,
}


@lru_cache(maxsize=256)
def kernel_for(spec: ActivationSpec) -> ActivationKernel:
    """Return the (cached, stateless) kernel evaluating ``spec``."""
    if spec.kind is ActivationKind.APTX and (spec.aptx_beta == 0.0 or spec.aptx_gamma == 0.0):
        # Reachable only through model_construct, which skips validation.
        raise ConfigurationError("APTx needs non-zero beta and gamma")
    return KERNELS[spec.kind](spec)


def _as_checked_array(xs: Sequence[float] | FloatArray) -> FloatArray:
    dtype = getattr(xs, "dtype", None)
    if dtype is None or not np.issubdtype(dtype, np.floating):
        dtype = np.float64
    arr = np.asarray(xs, dtype=dtype)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    finite = np.isfinite(arr)
    if not finite.all():
        index = int(np.flatnonzero(~finite.ravel())[0])
        raise DomainError(f"Non-finite input {arr.ravel()[index]!r}", index=index)
    return arr


def eval_batch(spec: ActivationSpec, xs: Sequence[float] | FloatArray) -> FloatArray:
    """Vectorised ``eval``; elementwise bit-identical to the scalar path."""
    arr = _as_checked_array(xs)
    with np.errstate(over="ignore"):
        return kernel_for(spec).forward(arr)


def eval_grad_batch(spec: ActivationSpec, xs: Sequence[float] | FloatArray) -> tuple[FloatArray, FloatArray]:
    """Vectorised ``eval_grad`` returning ``(values, grads)``."""
    arr = _as_checked_array(xs)
    with np.errstate(over="ignore"):
        return kernel_for(spec).fused(arr)


def eval(spec: ActivationSpec, x: float) -> float:  # noqa: A001
    """f(x) for one 64-bit input."""
    return float(eval_batch(spec, np.array([x], dtype=np.float64))[0])


def eval_grad(spec: ActivationSpec, x: float) -> ValueGrad:
    """f(x) and f'(x) for one 64-bit input."""
    values, grads = eval_grad_batch(spec, np.array([x], dtype=np.float64))
    return ValueGrad(value=float(values[0]), grad=float(grads[0]))


def mish_grad_closed_form(x: float | FloatArray) -> float | FloatArray:
    """MISH'(x) from the closed-form quotient of exponentials.

    Kept independent of :class:`MishKernel` so the two derivations can be cross-checked.
    For x > 30 numerator and denominator are divided by e^{4x}, which keeps every
    exponential below 1.
    """
    arr = np.asarray(x, dtype=np.float64)
    if not np.isfinite(arr).all():
        raise DomainError("mish_grad_closed_form needs finite input")
    if (np.abs(arr) > MISH_CLOSED_FORM_LIMIT).any():
        raise DomainError(f"mish_grad_closed_form is only evaluated on |x| <= {MISH_CLOSED_FORM_LIMIT:g}")

    direct_x = np.minimum(arr, MISH_CLOSED_FORM_SWITCH)
    ex = np.exp(direct_x)
    num = ex * (4.0 * (direct_x + 1.0) + 4.0 * ex**2 + ex**3 + ex * (4.0 * direct_x + 6.0))
    den = (2.0 * ex + ex**2 + 2.0) ** 2
    direct = num / den

    big_x = np.maximum(arr, MISH_CLOSED_FORM_SWITCH)
    u = np.exp(-big_x)
    num_r = 4.0 * (big_x + 1.0) * u**3 + 4.0 * u + 1.0 + (4.0 * big_x + 6.0) * u**2
    den_r = (2.0 * u + 1.0 + 2.0 * u**2) ** 2
    rearranged = num_r / den_r

    result = np.where(arr > MISH_CLOSED_FORM_SWITCH, rearranged, direct)
    if result.ndim == 0:
        return float(result)
    return result


def swish_as_aptx(rho: float) -> ActivationSpec:
    """APTx parameters reproducing x * sigmoid(rho * x) exactly."""
    if not np.isfinite(rho) or rho == 0.0:
        raise ConfigurationError(f"rho must be finite and non-zero, got {rho!r}")
    return ActivationSpec(kind=ActivationKind.APTX, aptx_alpha=1.0, aptx_beta=rho / 2.0, aptx_gamma=0.5)
