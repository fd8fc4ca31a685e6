#!/usr/bin/env python3
"""
Polynomial Reducts CLI
Classify polynomial collections, decompose bivariate polynomials, compare reducts and
measure expansion
"""

from __future__ import annotations

import json
import logging
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path
from typing import Any, NoReturn

import click
import yaml
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from polynomial_reducts import __version__
from polynomial_reducts.algebra.mpoly import MPoly
from polynomial_reducts.algebra.upoly import UPoly
from polynomial_reducts.classifier import classify as classify_collection
from polynomial_reducts.classifier import interdefinable
from polynomial_reducts.config import (
    Settings,
    SettingsLoader,
    default_settings_path,
    default_settings_yaml,
    load_settings,
)
from polynomial_reducts.constants import (
    DEFAULT_DEGREE_CAP,
    DEFAULT_GENERATORS,
    ExitCode,
    ParseErrorKind,
    WitnessFamily,
)
from polynomial_reducts.decomposition import er_classify
from polynomial_reducts.exceptions import (
    ConfigurationError,
    EmptyCollectionError,
    GuardError,
    ParseError,
    PolynomialReductsError,
    ShapeError,
    SourceSpan,
)
from polynomial_reducts.expansion import WitnessParams, expansion_series, write_csv
from polynomial_reducts.parser import parse_collection, parse_poly
from polynomial_reducts.report import ReportEnvelope
from polynomial_reducts.unary import definable_functions

console = Console()
err_console = Console(stderr=True)

logger = logging.getLogger(__name__)

PACKAGE_LOGGER = "polynomial_reducts"


# =============================================================================
# HELPERS
# =============================================================================

def configure_logging(verbosity: int) -> None:
    """Route package logs to stderr through rich; never to stdout."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG

    package_logger = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    handler = RichHandler(console=err_console, show_path=False, show_time=False)
    handler.setFormatter(logging.Formatter("%(message)s"))
    package_logger.addHandler(handler)
    package_logger.setLevel(level)
    package_logger.propagate = False


def _fail(code: ExitCode, message: str) -> NoReturn:
    err_console.print(f"[red]✗[/red] {message}", highlight=False, markup=True)
    sys.exit(int(code))


@contextmanager
def reported_errors() -> Iterator[None]:
    """Map library errors to exit codes."""
    try:
        yield
    except ParseError as e:
        _fail(ExitCode.PARSE_ERROR, f"Parse error: {e}")
    except EmptyCollectionError as e:
        _fail(ExitCode.EMPTY_COLLECTION, f"Empty collection: {e}")
    except ShapeError as e:
        _fail(ExitCode.WRONG_SHAPE, f"Wrong shape: {e}")
    except GuardError as e:
        _fail(ExitCode.GUARD_VIOLATION, f"Guard violation: {e}")
    except ConfigurationError as e:
        _fail(ExitCode.FAILURE, f"Configuration error: {e}")
    except PolynomialReductsError as e:
        _fail(ExitCode.FAILURE, f"Error: {e}")
    except OSError as e:
        _fail(ExitCode.FAILURE, f"Error: {e}")


def _settings(ctx: click.Context) -> Settings:
    config_path: Path | None = ctx.obj.get("config_path")
    settings = load_settings(config_path)
    logger.debug("settings from %s", settings.source)
    return settings


def _read_collection(path: str, settings: Settings) -> list[MPoly]:
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        line_start = data.rfind(b"\n", 0, e.start) + 1
        raise ParseError(
            f"invalid UTF-8 byte {data[e.start]:#04x}",
            kind=ParseErrorKind.LEX.value,
            span=SourceSpan(e.start - line_start, e.end - line_start),
            line=data.count(b"\n", 0, e.start) + 1,
            operation="read_collection",
        ) from e
    return parse_collection(text, settings.max_exponent)


def _emit(envelope: ReportEnvelope, settings: Settings) -> None:
    click.echo(envelope.to_json(settings.indent), nl=False)


def _parse_sizes(ctx: click.Context, param: click.Parameter, value: str) -> list[int]:
    try:
        sizes = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}") from None
    if not sizes or any(size < 1 for size in sizes):
        raise click.BadParameter("sizes must be positive integers")
    return sizes


def _parse_generators(value: str) -> tuple[str, ...] | tuple[int, ...]:
    parts = tuple(part.strip() for part in value.split(",") if part.strip())
    if parts and all(part.isdigit() for part in parts):
        return tuple(int(part) for part in parts)
    return parts


# =============================================================================
# ROOT
# =============================================================================

@click.group()
@click.version_option(version=__version__)
@click.option('--config', 'config_path', type=click.Path(dir_okay=False, path_type=Path),
              default=None, help='Settings file (default: .preduct/settings.yaml)')
@click.option('-v', '--verbose', count=True, help='-v for INFO logs, -vv for DEBUG')
@click.pass_context
def cli(ctx: click.Context, config_path: Path | None, verbose: int) -> None:
    """Polynomial reduct classification CLI

    Decide which structure a collection of polynomials over QQ generates when
    read as functions on C, with exact certificates.

    Configuration:
      Initialize settings:  preduct config init
      Validate settings:    preduct config validate
      Show settings:        preduct config show

    Common Workflow:
      1. preduct classify polys.txt          # Case I-IV with witnesses
      2. preduct decompose "x^2+y^2"         # Additive / Multiplicative / Neither
      3. preduct interdef a.txt b.txt        # Same structure?
      4. preduct expansion "x+y" --family ap --sizes 16,64,256

    For more information on each command, use: preduct <command> --help
    """
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path
    configure_logging(verbose)


# =============================================================================
# ANALYSIS COMMANDS
# =============================================================================

@cli.command('classify')
@click.argument('file', type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def classify(ctx: click.Context, file: str) -> None:
    """Classify the reduct generated by the polynomials in FILE

    FILE holds one polynomial per line; '#' starts a comment.

    Examples:
      preduct classify polys.txt
    """
    with reported_errors():
        settings = _settings(ctx)
        polys = _read_collection(file, settings)
        report = classify_collection(polys, settings)
        _emit(
            ReportEnvelope("classify", [str(p) for p in polys], dict(report.to_dict())),
            settings,
        )


@cli.command('decompose')
@click.argument('polytext')
@click.pass_context
def decompose(ctx: click.Context, polytext: str) -> None:
    """Additive/multiplicative decomposition of a bivariate polynomial

    Examples:
      preduct decompose "x^2+y^2"
      preduct decompose "x*y"
    """
    with reported_errors():
        settings = _settings(ctx)
        poly = parse_poly(polytext, settings.max_exponent)
        verdict = er_classify(poly)
        _emit(ReportEnvelope("decompose", [str(poly)], dict(verdict.to_dict())), settings)


@cli.command('interdef')
@click.argument('file_a', type=click.Path(exists=True, dir_okay=False))
@click.argument('file_b', type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def interdef(ctx: click.Context, file_a: str, file_b: str) -> None:
    """Decide whether two collections define the same structure

    Inputs are listed as FILE_A's polynomials followed by FILE_B's.

    Examples:
      preduct interdef a.txt b.txt
    """
    with reported_errors():
        settings = _settings(ctx)
        polys_a = _read_collection(file_a, settings)
        polys_b = _read_collection(file_b, settings)
        result = interdefinable(polys_a, polys_b, settings)
        _emit(
            ReportEnvelope(
                "interdef",
                [str(p) for p in polys_a + polys_b],
                dict(result.to_dict()),
                result.diagnostics(),
            ),
            settings,
        )


@cli.command('expansion')
@click.argument('polytext')
@click.option('--family', type=click.Choice([f.value for f in WitnessFamily]), default='ap',
              help='Test-set family')
@click.option('--sizes', required=True, callback=_parse_sizes,
              help='Comma-separated ascending sizes (coefficient bounds for witness)')
@click.option('--csv', 'csv_path', type=click.Path(dir_okay=False, path_type=Path),
              default=None, help='Write N,image_size,exponent rows to this file')
@click.option('--degree-cap', type=int, default=DEFAULT_DEGREE_CAP,
              help='Witness family: per-generator degree bound d')
@click.option('--generators', default=",".join(DEFAULT_GENERATORS),
              help='Witness family: comma-separated generator names or integers >= 2')
@click.pass_context
def expansion(ctx: click.Context, polytext: str, family: str, sizes: list[int],
              csv_path: Path | None, degree_cap: int, generators: str) -> None:
    """Measure |P(A, A)| growth on progressions or witness sets

    Examples:
      preduct expansion "x+y" --family ap --sizes 16,64,256
      preduct expansion "x*y" --family gp --sizes 16,64,256 --csv gp.csv
      preduct expansion "x+y" --family witness --sizes 2,3,4 --degree-cap 2
    """
    with reported_errors():
        settings = _settings(ctx)
        poly = parse_poly(polytext, settings.max_exponent)
        params = None
        if family == WitnessFamily.WITNESS.value:
            params = WitnessParams(_parse_generators(generators), degree_cap, 2)
        series = expansion_series(poly, family, sizes, settings, params)
        if csv_path is not None:
            series = replace(series, csv_path=write_csv(series.rows, csv_path))
            logger.info("rows written to %s", csv_path)
        _emit(ReportEnvelope("expansion", [str(poly)], dict(series.to_dict())), settings)


@cli.command('unary')
@click.argument('polytext')
@click.option('--bound', type=click.IntRange(min=1), default=None,
              help='Degree bound (default: unary.default_bound)')
@click.pass_context
def unary(ctx: click.Context, polytext: str, bound: int | None) -> None:
    """List the unary functions definable from a unary polynomial

    Examples:
      preduct unary "x^2+1" --bound 5
      preduct unary "x^3" --bound 9
    """
    with reported_errors():
        settings = _settings(ctx)
        poly = parse_poly(polytext, settings.max_exponent)
        family = definable_functions(UPoly.from_mpoly(poly), bound or settings.default_bound)
        _emit(ReportEnvelope("unary", [str(poly)], dict(family.to_dict())), settings)


# =============================================================================
# CONFIGURATION COMMANDS
# =============================================================================

@cli.group()
def config() -> None:
    """Settings file management"""
    pass


@config.command('init')
@click.option('--force', is_flag=True, help='Overwrite an existing settings file')
@click.pass_context
def config_init(ctx: click.Context, force: bool) -> None:
    """Write the default settings file

    Examples:
      preduct config init
      preduct --config custom.yaml config init --force
    """
    path: Path = ctx.obj.get("config_path") or default_settings_path()
    if path.exists() and not force:
        _fail(ExitCode.FAILURE, f"Settings file exists: {path} (use --force to overwrite)")
    with reported_errors():
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(default_settings_yaml(), encoding="utf-8")
    console.print(f"[green]✓[/green] Settings written: {path}")
    console.print(f"[yellow]→[/yellow] Edit it, then run: preduct config validate {path}")


@config.command('validate')
@click.argument('path', type=click.Path(dir_okay=False, path_type=Path), required=False)
@click.pass_context
def config_validate(ctx: click.Context, path: Path | None) -> None:
    """Validate a settings file against the bundled schema

    Examples:
      preduct config validate
      preduct config validate custom.yaml
    """
    target: Path = path or ctx.obj.get("config_path") or default_settings_path()
    with reported_errors():
        loader = SettingsLoader()
        loader.load_from_file(target)
    console.print(f"[green]✓[/green] {target.name} is valid")


@config.command('show')
@click.option('--format', 'output_format', type=click.Choice(['table', 'json', 'yaml']),
              default='table', help='Output format')
@click.pass_context
def config_show(ctx: click.Context, output_format: str) -> None:
    """Display the effective settings

    Examples:
      preduct config show
      preduct config show --format json
    """
    with reported_errors():
        settings = _settings(ctx)

    if output_format == 'json':
        document: dict[str, Any] = dict(settings.to_dict())
        click.echo(json.dumps(document, indent=settings.indent))
    elif output_format == 'yaml':
        click.echo(yaml.safe_dump(dict(settings.to_dict()), sort_keys=False), nl=False)
    else:
        table = Table(title=f"Settings ({settings.source})")
        table.add_column("Setting", style="cyan")
        table.add_column("Value", style="green")
        for key, value in settings.rows():
            table.add_row(key, value)
        console.print(table)


if __name__ == '__main__':
    cli()
