from typing import Annotated, List, Optional

import typer

from ..core.config import settings
from ..core.utils.serialization import write_csv, write_json
from ..schemas.activation import ActivationSpec
from ..schemas.training import DatasetName, LossName, TrainConfig
from ..services.nn_trainer import train
from .options import DEFAULT_OUT_DIR, OutDir, fmt, record_run


def cmd_train(
    ctx: typer.Context,
    dataset: Annotated[DatasetName, typer.Option("--dataset", case_sensitive=False)] = DatasetName.XOR,
    activation: Annotated[str, typer.Option("--activation", help="Hidden-layer activation, kind[:name=value,...].")] = "aptx",
    hidden: Annotated[Optional[List[int]], typer.Option("--hidden", help="Hidden layer width; repeat per layer.")] = None,
    epochs: Annotated[int, typer.Option("--epochs")] = settings.TRAIN_EPOCHS,
    learning_rate: Annotated[float, typer.Option("--learning-rate")] = settings.TRAIN_LEARNING_RATE,
    batch_size: Annotated[Optional[int], typer.Option("--batch-size", help="Mini-batch size; full batch when omitted.")] = None,
    loss: Annotated[LossName, typer.Option("--loss", case_sensitive=False)] = LossName.MSE,
    n_samples: Annotated[int, typer.Option("--n-samples")] = 200,
    noise: Annotated[float, typer.Option("--noise")] = 0.1,
    seed: Annotated[int, typer.Option("--seed")] = settings.TRAIN_SEED,
    loss_target: Annotated[float, typer.Option("--loss-target")] = settings.TRAIN_LOSS_TARGET,
    out_dir: OutDir = DEFAULT_OUT_DIR,
) -> None:
    """Train a dense network with plain SGD and report per-epoch loss, accuracy and time."""
    config = TrainConfig(
        dataset=dataset,
        n_samples=n_samples,
        noise=noise,
        hidden=hidden or [8],
        epochs=epochs,
        learning_rate=learning_rate,
        batch_size=batch_size,
        loss=loss,
        seed=seed,
        loss_target=loss_target,
        activation=ActivationSpec.parse(activation),
    )
    report = train(config)

    json_path = write_json(out_dir / "train.json", report)
    csv_path = write_csv(
        out_dir / "train_epochs.csv",
        ["epoch", "loss", "accuracy", "ms"],
        [
            [r.epoch for r in report.epochs],
            [r.loss for r in report.epochs],
            [float("nan") if r.accuracy is None else r.accuracy for r in report.epochs],
            [r.ms for r in report.epochs],
        ],
    )
    record_run(ctx, out_dir, [json_path, csv_path])

    accuracy = "-" if report.final_accuracy is None else fmt(report.final_accuracy)
    typer.echo(
        f"final_loss={fmt(report.final_loss)} final_accuracy={accuracy} "
        f"median_epoch_ms={report.median_epoch_ms:.3f} checksum={report.final_checksum}"
    )
