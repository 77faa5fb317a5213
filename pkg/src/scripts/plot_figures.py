import argparse
import logging
from pathlib import Path

import matplotlib as mpl

mpl.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from ..app.core.config import settings  # noqa: E402
from ..app.core.utils.serialization import read_csv  # noqa: E402
from ..app.services.figures import FIGURES  # noqa: E402

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

mpl.rcParams.update(
    {
        "axes.grid": True,
        "grid.alpha": 0.3,
        "axes.spines.top": False,
        "axes.spines.right": False,
        "legend.frameon": False,
        "figure.figsize": (5.0, 3.5),
    }
)


def plot_series(csv_path: Path, png_path: Path) -> None:
    header, table = read_csv(csv_path)
    fig, ax = plt.subplots()
    for i, column in enumerate(header[1:], start=1):
        ax.plot(table[:, 0], table[:, i], label=column)
    ax.axhline(0.0, color="black", linewidth=0.5)
    ax.axvline(0.0, color="black", linewidth=0.5)
    ax.set_xlabel("x")
    ax.set_title(csv_path.stem)
    ax.legend()
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)


def main() -> None:
    parser = argparse.ArgumentParser(description="Render the figure CSVs written by the figures command.")
    parser.add_argument("--out-dir", type=Path, default=Path(settings.OUTPUT_DIR))
    args = parser.parse_args()

    for name in FIGURES:
        csv_path = args.out_dir / f"{name}.csv"
        if not csv_path.exists():
            logger.warning(f"{csv_path} is missing; run the figures command first.")
            continue
        png_path = csv_path.with_suffix(".png")
        plot_series(csv_path, png_path)
        logger.info(f"Rendered {png_path}")


if __name__ == "__main__":
    main()
