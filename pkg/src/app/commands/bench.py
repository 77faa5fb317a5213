from typing import Annotated, List, Optional

import typer

from ..core.config import settings
from ..core.utils.serialization import write_json
from ..schemas.perf import BenchMode, Precision
from ..services.perf import bench_suite, render_table
from .options import DEFAULT_OUT_DIR, OutDir, parse_specs, record_run

DEFAULT_ACTIVATIONS = ["aptx", "mish", "swish", "relu"]


def cmd_bench(
    ctx: typer.Context,
    activation: Annotated[
        Optional[List[str]], typer.Option("--activation", help="kind[:name=value,...]; repeat. MISH is always added.")
    ] = None,
    mode: Annotated[BenchMode, typer.Option("--mode", case_sensitive=False)] = BenchMode.FORWARD,
    array_len: Annotated[int, typer.Option("--array-len")] = settings.BENCH_ARRAY_LEN,
    reps: Annotated[int, typer.Option("--reps")] = settings.BENCH_REPS,
    warmup: Annotated[int, typer.Option("--warmup")] = settings.BENCH_WARMUP,
    precision: Annotated[Precision, typer.Option("--precision", case_sensitive=False)] = Precision(settings.BENCH_PRECISION),
    seed: Annotated[int, typer.Option("--seed")] = settings.BENCH_SEED,
    workers: Annotated[int, typer.Option("--workers", help="Threads over array chunks; 1 is single-threaded.")] = settings.BENCH_WORKERS,
    out_dir: OutDir = DEFAULT_OUT_DIR,
) -> None:
    """Elementwise throughput, median over reps, relative to MISH."""
    specs = parse_specs(activation, DEFAULT_ACTIVATIONS)
    reports = bench_suite(specs, mode, array_len, reps, precision, seed, warmup, workers)
    path = write_json(out_dir / "bench.json", reports)
    record_run(ctx, out_dir, [path])
    typer.echo(render_table(reports))
