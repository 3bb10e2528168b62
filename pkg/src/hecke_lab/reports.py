"""Report persistence: CSV table, JSON sidecar and YAML summary for one run."""

from __future__ import annotations

import csv
import math
from pathlib import Path

from loguru import logger
from pydantic import BaseModel

from hecke_lab import __version__
from hecke_lab.config import RunConfig, config_echo
from hecke_lab.run import Cell, RunReport
from hecke_lab.utils.yaml_writer import write_summary


class Sidecar(BaseModel):
    """Everything needed to reproduce and audit a CSV: config echo, version and per-row diagnostics."""

    version: str
    command: str
    config: dict
    seed: int | None
    tolerance: float
    passed: bool
    counts: dict[str, int]
    notes: list[str]
    diagnostics: list[dict]


def format_cell(value: Cell) -> str:
    """Floats in scientific notation with 17 significant digits."""
    if isinstance(value, float):
        return f"{value:.16e}"
    return str(value)


def write_csv(report: RunReport, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(report.header)
        writer.writerows([format_cell(cell) for cell in row] for row in report.rows)


def _counts(report: RunReport) -> dict[str, int]:
    return {status: report.count(status) for status in ("ok", "breach", "error", "skipped")}


def build_sidecar(report: RunReport, config: RunConfig | None) -> Sidecar:
    return Sidecar(
        version=__version__,
        command=report.command,
        config=config_echo(config) if config is not None else {},
        seed=config.seed if config is not None else None,
        tolerance=report.tolerance,
        passed=report.passed,
        counts=_counts(report),
        notes=list(report.notes),
        diagnostics=report.diagnostics,
    )


def _worst(report: RunReport) -> float | None:
    column = report.header.index(report.error_column)
    values = [row[column] for row in report.rows if isinstance(row[column], float) and math.isfinite(row[column])]
    return max(values, default=None)


def summary(report: RunReport, paths: dict[str, Path]) -> dict:
    result: dict = {
        "command": report.command,
        "passed": report.passed,
        "rows": len(report.rows),
        **_counts(report),
        "tolerance": report.tolerance,
        "worst": _worst(report),
        "files": {kind: str(path) for kind, path in paths.items()},
    }
    if report.warnings:
        result["warnings"] = "\n".join(report.warnings)
    return result


def report_stem(report: RunReport, config: RunConfig | None) -> str:
    if config is not None and config.output.stem:
        return config.output.stem
    return report.command


def emit_report(report: RunReport, out_dir: Path, config: RunConfig | None = None) -> dict[str, Path]:
    """Write <stem>.csv, <stem>.json and <stem>.yaml under out_dir; returns the paths by kind."""
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = report_stem(report, config)
    paths = {"csv": out_dir / f"{stem}.csv", "json": out_dir / f"{stem}.json"}
    write_csv(report, paths["csv"])
    sidecar = build_sidecar(report, config)
    paths["json"].write_text(sidecar.model_dump_json(indent=2), encoding="utf-8")
    paths["yaml"] = write_summary(summary(report, paths), paths["csv"])
    logger.info(f"{report.command}: {len(report.rows)} rows written to {paths['csv']}")
    return paths
