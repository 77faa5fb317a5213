import logging
import sys
from collections.abc import Sequence

import click
import typer
from pydantic import ValidationError

from .commands import app
from .core.config import settings
from .core.exceptions import (
    ActivationBenchError,
    BenchmarkError,
    ConfigurationError,
    DomainError,
    OracleError,
    StaleCacheError,
    TrainingError,
    VerificationFailed,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_RUNTIME = 3

cli = typer.main.get_command(app)


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and map its outcome to an exit code.

    0 success, 1 usage or configuration error, 2 failed verification,
    3 runtime or I/O error.
    """
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = cli.main(args=args, prog_name=settings.APP_NAME, standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        typer.echo("Aborted.", err=True)
        return EXIT_RUNTIME
    except (ConfigurationError, DomainError, ValidationError) as e:
        typer.echo(f"error: {getattr(e, 'message', e)}", err=True)
        return EXIT_USAGE
    except VerificationFailed as e:
        typer.echo(e.message, err=True)
        return EXIT_VERIFICATION
    except (OracleError, BenchmarkError, TrainingError, StaleCacheError) as e:
        logger.error(e.message)
        typer.echo(f"error: {e.message}", err=True)
        return EXIT_RUNTIME
    except ActivationBenchError as e:
        typer.echo(f"error: {e.message}", err=True)
        return EXIT_RUNTIME
    except OSError as e:
        logger.error(f"I/O error: {e}")
        typer.echo(f"error: {e}", err=True)
        return EXIT_RUNTIME
    # click returns the exit code itself for --help and ctx.exit()
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
