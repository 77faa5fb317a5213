"""Dense network state, forward pass with cached pre-activations, and backprop.

Rows are samples: a batch of inputs is ``(n, in)`` and a layer computes
``y = x @ W.T + b`` with ``W`` shaped ``(out, in)``.
"""

import hashlib
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ...core.exceptions import ConfigurationError, StaleCacheError
from ...schemas.activation import ActivationSpec
from ..activation_core import eval_batch, eval_grad_batch

logger = logging.getLogger(__name__)

Array = npt.NDArray[np.float64]


class DenseLayer:
    """Affine map followed by an activation; ``activation=None`` is the identity."""

    def __init__(self, weights: Array, biases: Array, activation: ActivationSpec | None = None) -> None:
        weights = np.array(weights, dtype=np.float64, ndmin=2)
        biases = np.array(biases, dtype=np.float64).reshape(-1)
        if weights.ndim != 2 or biases.shape != (weights.shape[0],):
            raise ConfigurationError(f"Layer needs weights (out, in) and biases (out,), got {weights.shape} and {biases.shape}")
        if not (np.isfinite(weights).all() and np.isfinite(biases).all()):
            raise ConfigurationError("Layer parameters must be finite")
        self.weights = weights
        self.biases = biases
        self.activation = activation

    @property
    def in_dim(self) -> int:
        return self.weights.shape[1]

    @property
    def out_dim(self) -> int:
        return self.weights.shape[0]


class MLPModel:
    def __init__(self, layers: Sequence[DenseLayer], seed: int = 0) -> None:
        if not layers:
            raise ConfigurationError("A model needs at least one layer")
        for i, (prev, nxt) in enumerate(zip(layers, layers[1:])):
            if prev.out_dim != nxt.in_dim:
                raise ConfigurationError(f"Layer {i} emits {prev.out_dim} values but layer {i + 1} expects {nxt.in_dim}")
        self.layers = list(layers)
        self.seed = seed
        # bumped on every parameter update; forward caches remember the value they saw
        self.version = 0

    @property
    def layer_sizes(self) -> list[int]:
        return [self.layers[0].in_dim] + [layer.out_dim for layer in self.layers]

    def parameters(self) -> list[Array]:
        """Weights and biases in layer order; the arrays are the live ones."""
        params = []
        for layer in self.layers:
            params.extend((layer.weights, layer.biases))
        return params

    def checksum(self) -> str:
        h = hashlib.sha256()
        for param in self.parameters():
            h.update(np.ascontiguousarray(param).tobytes())
        return h.hexdigest()


@dataclass
class ForwardCache:
    version: int
    shapes: list[tuple[int, int]]
    # input of each layer, then the network output
    activations: list[Array]
    pre_activations: list[Array]
    squeeze: bool


@dataclass
class Gradients:
    weights: list[Array]
    biases: list[Array]

    def as_list(self) -> list[Array]:
        """Same order as :meth:`MLPModel.parameters`."""
        out = []
        for dw, db in zip(self.weights, self.biases):
            out.extend((dw, db))
        return out


def init_model(layer_sizes: Sequence[int], activation: ActivationSpec, seed: int) -> MLPModel:
    """Hidden layers use ``activation``, the output layer is linear.

    Weights and biases are drawn uniformly from ``[-1/sqrt(fan_in), 1/sqrt(fan_in)]``.
    """
    if len(layer_sizes) < 2 or any(size < 1 for size in layer_sizes):
        raise ConfigurationError(f"Need at least input and output sizes >= 1, got {list(layer_sizes)}")
    rng = np.random.default_rng(seed)
    layers = []
    last = len(layer_sizes) - 2
    for i, (fan_in, fan_out) in enumerate(zip(layer_sizes, layer_sizes[1:])):
        bound = 1.0 / np.sqrt(fan_in)
        weights = rng.uniform(-bound, bound, size=(fan_out, fan_in))
        biases = rng.uniform(-bound, bound, size=fan_out)
        layers.append(DenseLayer(weights, biases, None if i == last else activation))
    return MLPModel(layers, seed=seed)


def forward(model: MLPModel, inputs: npt.ArrayLike) -> tuple[Array, ForwardCache]:
    """Network output for one input vector or a batch of rows, plus the backprop cache."""
    x = np.asarray(inputs, dtype=np.float64)
    squeeze = x.ndim == 1
    if squeeze:
        x = x.reshape(1, -1)
    if x.ndim != 2 or x.shape[1] != model.layers[0].in_dim:
        raise ConfigurationError(f"Input of shape {np.shape(inputs)} does not match input size {model.layers[0].in_dim}")

    activations = [x]
    pre_activations = []
    for layer in model.layers:
        y = x @ layer.weights.T + layer.biases
        pre_activations.append(y)
        x = y if layer.activation is None else eval_batch(layer.activation, y)
        activations.append(x)

    cache = ForwardCache(
        version=model.version,
        shapes=[layer.weights.shape for layer in model.layers],
        activations=activations,
        pre_activations=pre_activations,
        squeeze=squeeze,
    )
    return (x[0] if squeeze else x), cache


def backward(model: MLPModel, cache: ForwardCache, grad_output: npt.ArrayLike) -> Gradients:
    """Gradients of the loss w.r.t. every weight and bias, given dL/d(output)."""
    if cache.version != model.version or cache.shapes != [layer.weights.shape for layer in model.layers]:
        raise StaleCacheError(
            f"Forward cache was taken at model version {cache.version}, model is at {model.version}"
        )
    delta = np.asarray(grad_output, dtype=np.float64)
    if cache.squeeze:
        delta = delta.reshape(1, -1)
    if delta.shape != cache.activations[-1].shape:
        raise ConfigurationError(f"Output gradient of shape {delta.shape} does not match output {cache.activations[-1].shape}")

    grad_w: list[Array] = [None] * len(model.layers)
    grad_b: list[Array] = [None] * len(model.layers)
    for i in reversed(range(len(model.layers))):
        layer = model.layers[i]
        if layer.activation is not None:
            _, slope = eval_grad_batch(layer.activation, cache.pre_activations[i])
            delta = delta * slope
        grad_w[i] = delta.T @ cache.activations[i]
        grad_b[i] = delta.sum(axis=0)
        delta = delta @ layer.weights
    return Gradients(weights=grad_w, biases=grad_b)


def sgd_step(model: MLPModel, grads: Gradients, learning_rate: float) -> None:
    for layer, dw, db in zip(model.layers, grads.weights, grads.biases):
        layer.weights -= learning_rate * dw
        layer.biases -= learning_rate * db
    model.version += 1
