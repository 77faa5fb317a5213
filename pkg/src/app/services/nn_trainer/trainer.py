"""Losses, the SGD training loop and network-level gradient checking."""

import logging
import math
import statistics
import time

import numpy as np
import numpy.typing as npt

from ...core.exceptions import ConfigurationError, DomainError, TrainingError
from ...schemas.activation import ActivationSpec
from ...schemas.calculus import DiffConfig
from ...schemas.training import EpochRecord, EpochTimeComparison, LossName, TrainConfig, TrainReport
from ..calculus_tools import central_diff, relative_error
from .datasets import generate_dataset, is_classification
from .model import MLPModel, backward, forward, init_model, sgd_step

logger = logging.getLogger(__name__)

Array = npt.NDArray[np.float64]

GRADIENT_CHECK_CONFIG = DiffConfig(step=1e-5, rel_floor=1.0)


def loss_and_grad(loss: LossName, outputs: Array, targets: npt.NDArray) -> tuple[float, Array]:
    """Scalar loss and dL/d(outputs).

    ``mse`` averages over every element and takes float targets shaped like ``outputs``.
    ``cross_entropy`` applies softmax to the rows of ``outputs`` and takes integer labels.
    """
    outputs = np.asarray(outputs, dtype=np.float64)
    if loss is LossName.MSE:
        targets = np.asarray(targets, dtype=np.float64).reshape(outputs.shape)
        diff = outputs - targets
        return float(np.mean(diff * diff)), 2.0 * diff / diff.size

    if outputs.ndim != 2:
        raise ConfigurationError("cross_entropy needs a batch of rows")
    labels = np.asarray(targets, dtype=np.int64).reshape(-1)
    n, k = outputs.shape
    if labels.size != n or labels.min() < 0 or labels.max() >= k:
        raise ConfigurationError(f"cross_entropy needs {n} labels in [0, {k}), got {labels.tolist()[:8]}...")
    shifted = outputs - outputs.max(axis=1, keepdims=True)
    log_probs = shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    rows = np.arange(n)
    value = -float(np.mean(log_probs[rows, labels]))
    grad = np.exp(log_probs)
    grad[rows, labels] -= 1.0
    return value, grad / n


def accuracy(outputs: Array, labels: npt.NDArray) -> float:
    """Single-output models threshold at 0.5, wider ones take the argmax."""
    if outputs.shape[1] == 1:
        predicted = (outputs[:, 0] > 0.5).astype(np.int64)
    else:
        predicted = np.argmax(outputs, axis=1)
    return float(np.mean(predicted == labels))


def encode_targets(labels: npt.NDArray, loss: LossName, output_dim: int, classification: bool) -> npt.NDArray:
    if loss is LossName.CROSS_ENTROPY or not classification:
        return labels
    if output_dim == 1:
        return labels.astype(np.float64).reshape(-1, 1)
    return np.eye(output_dim)[labels]


def default_output_dim(config: TrainConfig, labels: npt.NDArray) -> int:
    if config.output_dim is not None:
        return config.output_dim
    if not is_classification(config.dataset):
        return 1
    n_classes = int(labels.max()) + 1
    if config.loss is LossName.CROSS_ENTROPY:
        return n_classes
    return 1 if n_classes == 2 else n_classes


def gradient_check(model: MLPModel, inputs: Array, targets: npt.NDArray, loss: LossName, cfg: DiffConfig = GRADIENT_CHECK_CONFIG) -> float:
    """Worst relative error between backprop and central differences over every parameter.

    Parameters are perturbed in place and restored; the model version is left alone.
    """
    outputs, cache = forward(model, inputs)
    _, grad_out = loss_and_grad(loss, outputs, targets)
    analytic = backward(model, cache, grad_out).as_list()

    worst = 0.0
    for param, grad in zip(model.parameters(), analytic):
        for idx in np.ndindex(param.shape):
            original = param[idx]

            def loss_at(value: float, param=param, idx=idx) -> float:
                param[idx] = value
                out, _ = forward(model, inputs)
                return loss_and_grad(loss, out, targets)[0]

            try:
                numeric = central_diff(loss_at, float(original), cfg)
            finally:
                param[idx] = original
            worst = max(worst, relative_error(float(grad[idx]), numeric, cfg))
    logger.debug(f"network gradient check: worst relative error {worst:.3e}")
    return worst


def _batches(n: int, batch_size: int | None, rng: np.random.Generator) -> list[npt.NDArray[np.int64] | slice]:
    if batch_size is None or batch_size >= n:
        return [slice(None)]
    order = rng.permutation(n)
    return [order[start : start + batch_size] for start in range(0, n, batch_size)]


def train(config: TrainConfig) -> TrainReport:
    """Seeded SGD run; ``(seed, config)`` fully determines the report apart from timings.

    Raises
    ------
    TrainingError
        The loss became non-finite, or a pre-activation overflowed.
    """
    inputs, labels = generate_dataset(config.dataset, config.n_samples, config.noise, config.seed)
    classification = is_classification(config.dataset)
    output_dim = default_output_dim(config, labels)
    targets = encode_targets(labels, config.loss, output_dim, classification)
    layer_sizes = [inputs.shape[1], *config.hidden, output_dim]

    model = init_model(layer_sizes, config.activation, config.seed)
    shuffle_rng = np.random.default_rng([config.seed, 1])
    n = inputs.shape[0]
    log_every = max(config.epochs // 10, 1)

    records: list[EpochRecord] = []
    epochs_to_threshold = None
    for epoch in range(1, config.epochs + 1):
        start = time.perf_counter()
        total_loss, correct = 0.0, 0.0
        try:
            for batch in _batches(n, config.batch_size, shuffle_rng):
                x, t = inputs[batch], targets[batch]
                outputs, cache = forward(model, x)
                value, grad_out = loss_and_grad(config.loss, outputs, t)
                if not math.isfinite(value):
                    raise TrainingError(f"Loss became {value}", epoch=epoch)
                sgd_step(model, backward(model, cache, grad_out), config.learning_rate)
                size = x.shape[0]
                total_loss += value * size
                if classification:
                    correct += accuracy(outputs, labels[batch]) * size
        except DomainError as e:
            logger.error(f"Training diverged at epoch {epoch}: {e.message}")
            raise TrainingError(f"Non-finite pre-activation: {e.message}", epoch=epoch) from e
        elapsed_ms = (time.perf_counter() - start) * 1000.0

        record = EpochRecord(
            epoch=epoch,
            loss=total_loss / n,
            accuracy=correct / n if classification else None,
            ms=elapsed_ms,
        )
        records.append(record)
        if epochs_to_threshold is None and record.loss < config.loss_target:
            epochs_to_threshold = epoch
        if epoch % log_every == 0:
            logger.debug(f"epoch {epoch}: loss={record.loss:.6f} accuracy={record.accuracy}")

    final = records[-1]
    report = TrainReport(
        config=config,
        layer_sizes=layer_sizes,
        epochs=records,
        epochs_to_threshold=epochs_to_threshold,
        final_loss=final.loss,
        final_accuracy=final.accuracy,
        median_epoch_ms=statistics.median(r.ms for r in records),
        final_checksum=model.checksum(),
    )
    logger.info(
        f"Trained {config.activation.label} on {config.dataset.value} {layer_sizes}: "
        f"loss={report.final_loss:.6f} after {config.epochs} epochs"
    )
    return report


def compare_epoch_time(config: TrainConfig, against: ActivationSpec, runs: int = 5) -> EpochTimeComparison:
    """Median per-epoch milliseconds of ``config.activation`` and ``against`` on identical data and init.

    Runs alternate between the two activations so slow drift of the machine hits both.
    """
    if runs < 1:
        raise ConfigurationError(f"runs must be >= 1, got {runs}")
    other = config.model_copy(update={"activation": against})
    mine: list[float] = []
    theirs: list[float] = []
    for _ in range(runs):
        mine.append(train(config).median_epoch_ms)
        theirs.append(train(other).median_epoch_ms)
    return EpochTimeComparison(
        label=config.activation.label,
        against=against.label,
        runs=runs,
        median_epoch_ms=statistics.median(mine),
        against_median_epoch_ms=statistics.median(theirs),
    )
