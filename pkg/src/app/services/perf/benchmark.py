"""Elementwise throughput harness for the activation kernels.

Every spec in one run sees the same seeded input array. Outputs are hashed on each
rep and compared, which both detects nondeterminism and keeps the result alive.
"""

import hashlib
import logging
import statistics
import time
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import numpy.typing as npt

from ...core.config import settings
from ...core.exceptions import BenchmarkError, ConfigurationError
from ...schemas.activation import ActivationKind, ActivationSpec
from ...schemas.perf import BenchMode, Precision, ThroughputReport
from ..activation_core import ActivationKernel, kernel_for
from .cost_model import count_ops

logger = logging.getLogger(__name__)

MIN_ARRAY_LEN = 10_000
MIN_REPS = 11
MIN_WARMUP = 3
INPUT_LO, INPUT_HI = -5.0, 5.0
# timed region must span this many ticks of the clock
RESOLUTION_FACTOR = 1000
# chunk boundaries for the worker mode are multiples of this
CHUNK_ALIGN = 1024

DTYPES = {Precision.FLOAT32: np.float32, Precision.FLOAT64: np.float64}


def make_input(array_len: int, precision: Precision, seed: int) -> npt.NDArray[np.floating]:
    rng = np.random.default_rng(seed)
    return rng.uniform(INPUT_LO, INPUT_HI, size=array_len).astype(DTYPES[precision])


def _run(kernel: ActivationKernel, mode: BenchMode, data: npt.NDArray[np.floating]) -> list[npt.NDArray[np.floating]]:
    if mode is BenchMode.FORWARD:
        return [kernel.forward(data)]
    if mode is BenchMode.DERIVATIVE:
        return [kernel.derivative(data)]
    return list(kernel.fused(data))


def _chunks(data: npt.NDArray[np.floating], workers: int) -> list[npt.NDArray[np.floating]]:
    blocks = -(-data.size // CHUNK_ALIGN)
    per_worker = -(-blocks // workers) * CHUNK_ALIGN
    return [data[start : start + per_worker] for start in range(0, data.size, per_worker)]


def _run_partitioned(
    kernel: ActivationKernel,
    mode: BenchMode,
    chunks: list[npt.NDArray[np.floating]],
    pool: ThreadPoolExecutor,
) -> list[npt.NDArray[np.floating]]:
    parts = list(pool.map(lambda chunk: _run(kernel, mode, chunk), chunks))
    return [np.concatenate([part[i] for part in parts]) for i in range(len(parts[0]))]


def _digest(outputs: list[npt.NDArray[np.floating]]) -> str:
    h = hashlib.sha256()
    for out in outputs:
        h.update(np.ascontiguousarray(out).tobytes())
    return h.hexdigest()


def bench_throughput(
    spec: ActivationSpec,
    mode: BenchMode = BenchMode.FORWARD,
    array_len: int = settings.BENCH_ARRAY_LEN,
    reps: int = settings.BENCH_REPS,
    precision: Precision = Precision(settings.BENCH_PRECISION),
    seed: int = settings.BENCH_SEED,
    warmup: int = settings.BENCH_WARMUP,
    workers: int = settings.BENCH_WORKERS,
    data: npt.NDArray[np.floating] | None = None,
) -> ThroughputReport:
    """Median elements/second of one kernel over ``reps`` timed runs.

    Parameters
    ----------
    data: ndarray, optional
        Pre-generated input, used by :func:`bench_suite` so all specs share one array.
        Generated from ``seed`` when omitted.

    Raises
    ------
    BenchmarkError
        The median run is too short for the timer, or the outputs changed between reps.
    """
    if array_len < MIN_ARRAY_LEN:
        raise ConfigurationError(f"array_len must be >= {MIN_ARRAY_LEN}, got {array_len}")
    if reps < MIN_REPS:
        raise ConfigurationError(f"reps must be >= {MIN_REPS}, got {reps}")
    if warmup < MIN_WARMUP:
        raise ConfigurationError(f"warmup must be >= {MIN_WARMUP}, got {warmup}")
    if workers < 1:
        raise ConfigurationError(f"workers must be >= 1, got {workers}")

    if data is None:
        data = make_input(array_len, precision, seed)
    elif data.size != array_len or data.dtype != DTYPES[precision]:
        raise ConfigurationError("Shared input does not match array_len / precision")

    kernel = kernel_for(spec)
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    chunks = _chunks(data, workers) if pool else None

    def run_once() -> list[npt.NDArray[np.floating]]:
        if pool is None:
            return _run(kernel, mode, data)
        return _run_partitioned(kernel, mode, chunks, pool)

    timings: list[float] = []
    checksum: str | None = None
    try:
        with np.errstate(over="ignore"):
            for _ in range(warmup):
                run_once()
            for rep in range(reps):
                start = time.perf_counter()
                outputs = run_once()
                timings.append(time.perf_counter() - start)
                digest = _digest(outputs)
                if checksum is None:
                    checksum = digest
                elif digest != checksum:
                    raise BenchmarkError(f"Output checksum of {spec.label} changed on rep {rep}")
    finally:
        if pool is not None:
            pool.shutdown()

    median = statistics.median(timings)
    resolution = time.get_clock_info("perf_counter").resolution
    if median < RESOLUTION_FACTOR * resolution:
        raise BenchmarkError(
            f"Median run of {median:.3e}s is too short for a {resolution:.1e}s timer; increase array_len"
        )

    report = ThroughputReport(
        spec=spec,
        kind=spec.kind.value,
        label=spec.label,
        mode=mode,
        precision=precision,
        array_len=array_len,
        reps=reps,
        warmup=warmup,
        workers=workers,
        elements_per_second=array_len / median,
        median_seconds=median,
        checksum=checksum,
    )
    logger.debug(f"bench {report.label} {mode.value}: {report.elements_per_second:.3e} elem/s")
    return report


def bench_suite(
    specs: Sequence[ActivationSpec],
    mode: BenchMode = BenchMode.FORWARD,
    array_len: int = settings.BENCH_ARRAY_LEN,
    reps: int = settings.BENCH_REPS,
    precision: Precision = Precision(settings.BENCH_PRECISION),
    seed: int = settings.BENCH_SEED,
    warmup: int = settings.BENCH_WARMUP,
    workers: int = settings.BENCH_WORKERS,
) -> list[ThroughputReport]:
    """Benchmark ``specs`` on one shared array and fill in ``relative_to_mish``.

    MISH is appended when absent because it is the reference of the ratio column.
    """
    specs = list(specs)
    if not any(spec.kind is ActivationKind.MISH for spec in specs):
        specs.append(ActivationSpec(kind=ActivationKind.MISH))

    data = make_input(array_len, precision, seed)
    reports = [
        bench_throughput(spec, mode, array_len, reps, precision, seed, warmup, workers, data=data)
        for spec in specs
    ]

    mish = next(r for r in reports if r.kind == ActivationKind.MISH.value)
    reports = [
        r.model_copy(update={"relative_to_mish": r.elements_per_second / mish.elements_per_second})
        for r in reports
    ]
    for r in reports:
        if r.kind == ActivationKind.APTX.value and r.relative_to_mish < 1.0:
            logger.warning(f"{r.label} {mode.value} ran slower than MISH (ratio {r.relative_to_mish:.3f})")

    logger.info(f"Benchmarked {len(reports)} activations ({mode.value}, {precision.value}, n={array_len})")
    return reports


def render_table(reports: Sequence[ThroughputReport]) -> str:
    """Plain-text table: kind, mode, transcendental count, elements/sec, ratio vs MISH."""
    header = f"{'kind':<28} {'mode':<10} {'transc.':>7} {'elements/sec':>14} {'vs MISH':>8}"
    lines = [header, "-" * len(header)]
    for r in reports:
        profile = count_ops(r.spec)
        # fused reuses the derivative tree's transcendentals for the value
        counts = profile.forward if r.mode is BenchMode.FORWARD else profile.derivative
        ratio = f"{r.relative_to_mish:.3f}" if r.relative_to_mish is not None else "-"
        lines.append(f"{r.label:<28} {r.mode.value:<10} {counts.transcendental:>7d} {r.elements_per_second:>14.4e} {ratio:>8}")
    return "\n".join(lines)
