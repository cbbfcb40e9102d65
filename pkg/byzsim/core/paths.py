"""
Path generation for run and sweep artefacts
"""
import re
from pathlib import Path
from typing import Any, Dict


def get_run_dir(output_dir: str, project_name: str) -> Path:
    """Default run directory: {output_dir}/{project_name}."""
    return Path(output_dir) / project_name


def get_metrics_path(run_dir: Path) -> Path:
    return run_dir / "metrics.csv"


def get_model_path(run_dir: Path) -> Path:
    return run_dir / "final_model.npy"


def get_config_path(run_dir: Path) -> Path:
    """Normalized config document written next to the metrics."""
    return run_dir / "config.json"


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def get_cell_name(params: Dict[str, Any]) -> str:
    """Cell directory name: {key}-{value} pairs joined by '_', in grid order."""
    if not params:
        return "base"
    parts = [f"{key}-{_format_value(value)}" for key, value in params.items()]
    return re.sub(r"[^A-Za-z0-9_.+-]", "_", "_".join(parts))


def get_cell_dir(sweep_dir: Path, params: Dict[str, Any]) -> Path:
    return sweep_dir / "cells" / get_cell_name(params)


def get_summary_path(sweep_dir: Path) -> Path:
    return sweep_dir / "summary.csv"


def get_summary_mean_path(sweep_dir: Path) -> Path:
    """Seed-averaged summary."""
    return sweep_dir / "summary_mean.csv"
