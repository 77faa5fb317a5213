import logging

import numpy as np
import numpy.typing as npt

from ...core.exceptions import ConfigurationError
from ...schemas.training import DatasetName

logger = logging.getLogger(__name__)

MIN_SAMPLES = 4
# inner moon is centred here
MOON_OFFSET = (1.0, 0.5)
SPIRAL_TURNS = 2


def _xor() -> tuple[npt.NDArray[np.float64], npt.NDArray[np.int64]]:
    inputs = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
    return inputs, np.array([0, 1, 1, 0], dtype=np.int64)


def _two_moons(n: int, noise: float, rng: np.random.Generator):
    n_outer = n // 2
    n_inner = n - n_outer
    t_outer = np.linspace(0.0, np.pi, n_outer)
    t_inner = np.linspace(0.0, np.pi, n_inner)
    outer = np.column_stack([np.cos(t_outer), np.sin(t_outer)])
    inner = np.column_stack([MOON_OFFSET[0] - np.cos(t_inner), MOON_OFFSET[1] - np.sin(t_inner)])
    inputs = np.vstack([outer, inner])
    labels = np.concatenate([np.zeros(n_outer, dtype=np.int64), np.ones(n_inner, dtype=np.int64)])
    if noise > 0:
        inputs = inputs + rng.normal(scale=noise, size=inputs.shape)
    order = rng.permutation(n)
    return inputs[order], labels[order]


def _spiral(n: int, noise: float, rng: np.random.Generator):
    """Two Archimedean arms r = t / (2*pi*turns), the second rotated by pi."""
    per_arm = [n // 2, n - n // 2]
    inputs, labels = [], []
    for arm, count in enumerate(per_arm):
        t = np.linspace(0.0, 2.0 * np.pi * SPIRAL_TURNS, count)
        r = t / (2.0 * np.pi * SPIRAL_TURNS)
        angle = t + arm * np.pi
        inputs.append(np.column_stack([r * np.cos(angle), r * np.sin(angle)]))
        labels.append(np.full(count, arm, dtype=np.int64))
    inputs = np.vstack(inputs)
    labels = np.concatenate(labels)
    if noise > 0:
        inputs = inputs + rng.normal(scale=noise, size=inputs.shape)
    order = rng.permutation(n)
    return inputs[order], labels[order]


def _sine_regression(n: int, noise: float, rng: np.random.Generator):
    x = rng.uniform(0.0, 1.0, size=n)
    y = np.sin(2.0 * np.pi * x)
    if noise > 0:
        y = y + rng.normal(scale=noise, size=n)
    return x.reshape(-1, 1), y.reshape(-1, 1)


def generate_dataset(name: DatasetName | str, n: int, noise: float, seed: int) -> tuple[npt.NDArray[np.float64], npt.NDArray]:
    """Seeded synthetic dataset as ``(inputs, targets)``.

    Classification sets return integer labels of shape ``(n,)``; ``sine_regression``
    returns float targets of shape ``(n, 1)``. ``xor`` ignores ``n``, ``noise`` and ``seed``.
    """
    try:
        name = DatasetName(name)
    except ValueError as e:
        raise ConfigurationError(f"Unknown dataset {name!r}") from e
    if n < MIN_SAMPLES:
        raise ConfigurationError(f"Datasets need n >= {MIN_SAMPLES}, got {n}")
    if not (np.isfinite(noise) and noise >= 0):
        raise ConfigurationError(f"noise must be finite and >= 0, got {noise}")

    if name is DatasetName.XOR:
        return _xor()

    rng = np.random.default_rng(seed)
    if name is DatasetName.TWO_MOONS:
        data = _two_moons(n, noise, rng)
    elif name is DatasetName.SPIRAL:
        data = _spiral(n, noise, rng)
    else:
        data = _sine_regression(n, noise, rng)
    logger.debug(f"generated {name.value}: n={n} noise={noise} seed={seed}")
    return data


def is_classification(name: DatasetName) -> bool:
    return name is not DatasetName.SINE_REGRESSION
