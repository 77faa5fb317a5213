from typing import Annotated

import click
import typer

from ..core import logger as app_logger
from ..core.config import settings
from .bench import cmd_bench
from .compare import cmd_compare
from .cost import cmd_cost
from .evaluate import cmd_eval
from .figures import cmd_figures
from .minimize import cmd_min
from .replay import cmd_replay
from .train import cmd_train
from .verify import cmd_verify

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]

app = typer.Typer(name=settings.APP_NAME, help=settings.APP_DESCRIPTION, no_args_is_help=True, add_completion=False)


@app.callback()
def configure(
    log_level: Annotated[
        str,
        typer.Option(
            "--log-level",
            click_type=click.Choice(LOG_LEVELS, case_sensitive=False),
            help="Logging level for this run.",
        ),
    ] = settings.LOG_LEVEL,
) -> None:
    app_logger.set_level(log_level)


app.command("eval")(cmd_eval)
app.command("figures")(cmd_figures)
app.command("verify")(cmd_verify)
app.command("compare")(cmd_compare)
app.command("min")(cmd_min)
app.command("cost")(cmd_cost)
app.command("bench")(cmd_bench)
app.command("train")(cmd_train)
app.command("replay")(cmd_replay)
