"""CLI entry point for hecke-lab."""

import sys
from collections.abc import Callable
from pathlib import Path

import click
from loguru import logger
from rich.console import Console
from rich.table import Table

from hecke_lab.config import RunConfig, apply_overrides, load_config
from hecke_lab.errors import ConfigError, LabError
from hecke_lab.reports import emit_report
from hecke_lab.run import COMMAND_OF_CHECK, RunReport, run
from hecke_lab.selfcheck import DEFAULT_SEED, CheckOutcome, run_selfcheck, selfcheck_report

# Library use stays silent unless --debug is given
logger.disable("hecke_lab")

STATUS_ICON = {"ok": "✅", "breach": "❌", "error": "💥", "skipped": "⏭️"}
_SHOWN_COLUMNS = 4


@click.group()
@click.option("--debug", is_flag=True, help="Enable debug logging")
def main(*, debug: bool) -> None:
    """hecke-lab - numerical checks for Hecke-group automorphic integrals."""
    if debug:
        logger.enable("hecke_lab")


def _run_options(command: Callable) -> Callable:
    options = [
        click.option("--config", "config_path", type=click.Path(path_type=Path), help="JSON run config (required)"),
        click.option("--out", type=click.Path(path_type=Path), help="Output directory (overrides output.dir)"),
        click.option("--tol", type=float, help="Tolerance override"),
        click.option("--max-terms", type=int, help="Series budget override"),
        click.option("--seed", type=int, help="Seed for random RPF configurations"),
        click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True, help="Grid workers"),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _cell(value: object) -> str:
    return f"{value:.3e}" if isinstance(value, float) else str(value)


def _display_report(report: RunReport) -> None:
    """Rich table with the leading columns, the error column and a status icon per row."""
    error_index = report.header.index(report.error_column)
    columns = [*range(min(_SHOWN_COLUMNS, error_index)), error_index]
    table = Table(title=report.command)
    table.add_column("")
    for index in columns:
        table.add_column(report.header[index], justify="right")
    for row, status in zip(report.rows, report.statuses, strict=True):
        table.add_row(STATUS_ICON[status], *(_cell(row[index]) for index in columns))
    Console().print(table)
    for note in report.notes:
        click.echo(f"note: {note}")
    for warning in report.warnings:
        click.echo(f"⚠️  {warning}")


def _display_outcome(report: RunReport, paths: dict[str, Path] | None) -> None:
    counts = ", ".join(f"{report.count(s)} {s}" for s in ("ok", "breach", "error", "skipped") if report.count(s))
    if report.passed:
        click.echo(f"✅ {report.command}: all {len(report.rows)} rows within tolerance ({counts or 'no rows'})")
    else:
        click.echo(f"❌ {report.command}: tolerance not met ({counts})")
    if paths:
        click.echo(f"   report: {paths['csv']}")


def _fail(error: Exception) -> None:
    click.echo(f"Error: {error}", err=True)
    sys.exit(1)


def _execute(command: str, config_path: Path | None, out: Path | None, overrides: dict, threads: int) -> None:
    """Shared body of the verify-* and kernel subcommands: load, override, run, persist, exit."""
    if config_path is None:
        _fail(ConfigError(f"{command} needs --config"))
        return
    try:
        config = apply_overrides(load_config(config_path), out=out, **overrides)
        _check_command(command, config)
        report = run(config, threads)
        paths = emit_report(report, config.output.dir, config)
    except (LabError, OSError) as error:
        _fail(error)
        return
    _display_report(report)
    _display_outcome(report, paths)
    sys.exit(report.exit_code)


def _check_command(command: str, config: RunConfig) -> None:
    expected = COMMAND_OF_CHECK[config.check.type]
    if expected != command:
        raise ConfigError(f"config check.type '{config.check.type}' belongs to '{expected}', not '{command}'")


def _register(command: str, help_text: str) -> None:
    @main.command(name=command, help=help_text)
    @_run_options
    def _command(
        config_path: Path | None,
        out: Path | None,
        tol: float | None,
        max_terms: int | None,
        seed: int | None,
        threads: int,
    ) -> None:
        _execute(command, config_path, out, {"tol": tol, "max_terms": max_terms, "seed": seed}, threads)


_register("verify-fe", "Functional-equation residual of the completed L-function on a (sigma, t) grid.")
_register("verify-first", "First identity: Riesz sum against its Bessel-series expansion on an x grid.")
_register("verify-second", "Second identity: exponentially weighted sum against its closed form on a y grid.")
_register("residues", "Closed-form residue sums against contour-integral oracles.")
_register("kernels", "Proof kernels: closed forms against independent quadrature.")


def _display_selfcheck(outcomes: list[CheckOutcome]) -> None:
    table = Table(title="selfcheck")
    for column in ("", "module", "check", "value", "tol"):
        table.add_column(column)
    for outcome in outcomes:
        value = outcome.error or f"{outcome.value:.2e}"
        table.add_row("✅" if outcome.passed else "❌", outcome.module, outcome.name, value, f"{outcome.tol:.0e}")
    Console().print(table)


@main.command()
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Seed for the random checks")
@click.option("--out", type=click.Path(path_type=Path), help="Also write a report to this directory")
def selfcheck(seed: int, out: Path | None) -> None:
    """Run the seeded invariant battery of every module."""
    outcomes = run_selfcheck(seed)
    _display_selfcheck(outcomes)
    report = selfcheck_report(outcomes)
    paths = None
    if out is not None:
        try:
            paths = emit_report(report, out)
        except OSError as error:
            _fail(error)
    _display_outcome(report, paths)
    sys.exit(report.exit_code)


if __name__ == "__main__":
    main()
