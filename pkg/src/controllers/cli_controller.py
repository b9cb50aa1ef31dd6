"""
Command-line surface: check, build, walls, dual, verify and export.

Every command prints one JSON document on stdout. Toolkit errors are printed
as an error document and mapped to their exit code.
"""
import functools
import logging
import sys
from typing import Any, Callable, Optional

import click
from pydantic import BaseModel

from src.config import LOG_LEVEL
from src.domain.models.run_models import RunConfig
from src.infrastructure.exporters.json_exporter import to_bytes
from src.use_cases.check_use_cases import run_check
from src.use_cases.complex_use_cases import run_build, run_dual, run_walls
from src.use_cases.export_use_cases import run_export
from src.use_cases.pipeline import PipelineContext
from src.use_cases.verify_use_cases import run_verify
from src.utils.constants import EXIT_OK, EXIT_VERIFICATION_FAILED, EXPORT_FORMATS
from src.utils.exceptions import ToolkitError, get_error_response

logger = logging.getLogger(__name__)


def _emit(payload: Any) -> None:
    if isinstance(payload, BaseModel):
        payload = payload.model_dump()
    click.echo(to_bytes(payload).decode("utf-8"))


def handle_errors(command: Callable) -> Callable:
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            code = command(*args, **kwargs)
        except ToolkitError as e:
            logger.error(f"{type(e).__name__}: {e.message}")
            _emit(get_error_response(e))
            sys.exit(e.exit_code)
        sys.exit(code or EXIT_OK)

    return wrapper


def run_options(command: Callable) -> Callable:
    options = [
        click.option("--config", "config_path", type=click.Path(), help="JSON run configuration"),
        click.option("--radius", type=int, help="Radius of the X ball"),
        click.option("--fibre-radius", type=int, help="Radius of every fibre ball"),
        click.option("--core", "core_radius", type=int, help="Base radius of the verified core"),
        click.option("--max-area", type=int, help="Dehn and diagram search bound"),
        click.option("--max-k", type=int, help="Largest subdivision tried when balancing"),
        click.option("--seed", type=int, help="Seed for layouts and random oracles"),
        click.option("--out-dir", type=click.Path(file_okay=False), help="Directory receiving artifacts"),
        click.option("--format", "formats", type=click.Choice(EXPORT_FORMATS), multiple=True,
                     help="Artifact format (repeatable)"),
        click.argument("presentation", required=False),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _config(config_path: Optional[str], formats, **overrides) -> RunConfig:
    return RunConfig.build(config_path, formats=list(formats) or None, **overrides)


@click.group()
@click.option("-v", "--verbose", count=True, help="Increase log verbosity")
def cli(verbose: int) -> None:
    """Small cancellation over free products and cubulation of the blown-up complex."""
    level = LOG_LEVEL if not verbose else ("INFO" if verbose == 1 else "DEBUG")
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


@cli.command()
@click.argument("presentation")
@handle_errors
def check(presentation: str) -> int:
    """Decide C'(1/6) for PRESENTATION (a file or builtin:<name>)."""
    report = run_check(presentation)
    _emit(report)
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


@cli.command()
@run_options
@handle_errors
def build(config_path, formats, **overrides) -> int:
    """Build the X ball, the blow-up and its balanced subdivision."""
    report, _ = run_build(_config(config_path, formats, **overrides))
    _emit(report)
    return EXIT_OK


@cli.command()
@run_options
@handle_errors
def walls(config_path, formats, **overrides) -> int:
    """Walls through the core and whether they separate."""
    report, _ = run_walls(_config(config_path, formats, **overrides))
    _emit(report)
    return EXIT_OK if report.not_separating == 0 else EXIT_VERIFICATION_FAILED


@cli.command()
@run_options
@handle_errors
def dual(config_path, formats, **overrides) -> int:
    """Dual cube complex of the walls on the core."""
    report, _ = run_dual(_config(config_path, formats, **overrides))
    _emit(report)
    ok = report.median and report.flag_links and report.distances
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


@cli.command()
@run_options
@click.option("--progress/--no-progress", default=False)
@handle_errors
def verify(config_path, formats, progress, **overrides) -> int:
    """Run the full invariant matrix."""
    report = run_verify(_config(config_path, formats, **overrides), progress)
    _emit(report)
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


@cli.command()
@run_options
@handle_errors
def export(config_path, formats, **overrides) -> int:
    """Write every artifact in the requested formats."""
    config = _config(config_path, formats, **overrides)
    written = run_export(PipelineContext.from_config(config))
    _emit({"header": config.header(), "files": [str(path) for path in written]})
    return EXIT_OK
