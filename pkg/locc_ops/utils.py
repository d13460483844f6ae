"""
utils.py
Plumbing shared by the CLI commands: settings resolution, logging setup,
error exits and report output.
"""
import functools
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import click
from rich.console import Console
from rich.logging import RichHandler

from .config import FORMATS, Settings, load_config
from .errors import InvariantViolation, LoccError

log = logging.getLogger(__name__)

console = Console()
err_console = Console(stderr=True)


def setup_logging(level: str):
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False, rich_tracebacks=False)],
        force=True,
    )


def resolve_settings(ctx: click.Context, overrides: Optional[Dict[str, Any]] = None) -> Settings:
    """Load settings for this invocation and configure logging from them."""
    obj = ctx.find_root().obj or {}
    settings = load_config(obj.get("config"), overrides)
    setup_logging("DEBUG" if obj.get("verbose") else settings.log_level)
    return settings


def fail(exc: LoccError):
    err_console.print(f"[red]  ✗  {exc}[/red]")
    sys.exit(exc.exit_code)


def handle_errors(fn: Callable) -> Callable:
    """
    Turn LoccError into a red ✗ line and the mapped exit code. Anything
    else escaping a command is an internal failure and exits 3.
    """
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except LoccError as exc:
            fail(exc)
        except Exception as exc:
            log.debug("unexpected error", exc_info=True)
            fail(InvariantViolation(f"internal error: {type(exc).__name__}: {exc}"))
    return wrapper


# ── Shared options ────────────────────────────────────────────────────────────

def input_option(required: bool = True, help: str = "State-set document (JSON)."):
    return click.option("--input", "input_path", required=required,
                        type=click.Path(dir_okay=False, path_type=Path), help=help)


def tol_option(fn):
    return click.option("--tol", type=float, default=None,
                        help="Orthogonality / PSD tolerance (overrides the document and config).")(fn)


def output_options(fn):
    fn = click.option("--format", "fmt", type=click.Choice(FORMATS), default=None,
                      help="Report format (default from config: json).")(fn)
    fn = click.option("--output", "output_path", type=click.Path(dir_okay=False, path_type=Path),
                      default=None, help="Write the report here instead of stdout.")(fn)
    return fn


# ── Output ────────────────────────────────────────────────────────────────────

def emit(doc: Dict[str, Any], settings: Settings, fmt: Optional[str], output: Optional[Path]):
    from .documents import dumps
    from .render import render_report

    fmt = fmt or settings.output_format
    if fmt == "json":
        text = dumps(doc)
        if output:
            output.write_text(text)
        else:
            click.echo(text, nl=False)
        return

    if output:
        with open(output, "w") as f:
            render_report(doc, Console(file=f, width=100))
    else:
        render_report(doc, console)
