"""
Core orchestration for byzsim: config, training loop, pipeline and sweeps
"""
from .config import (
    DEFAULT_OUTPUT_DIR,
    ExperimentConfig,
    build_config,
    parse_config,
    load_document,
    default_workers,
)
from .schedule import lr_schedule
from .metrics import MetricsRow, METRICS_HEADER, write_csv, read_csv, final_accuracy
from .experiment import (
    ExperimentState,
    ExperimentResult,
    load_datasets,
    setup_experiment,
    run_round,
    train_rounds,
    run_experiment,
)
from .paths import (
    get_run_dir,
    get_metrics_path,
    get_model_path,
    get_config_path,
    get_cell_name,
    get_cell_dir,
    get_summary_path,
    get_summary_mean_path,
)
from .state import (
    STAGES,
    load_state,
    save_state,
    create_state,
    load_sweep_state,
)
from .pipeline import run_pipeline
from .sweep import (
    SweepGrid,
    SweepCell,
    CellResult,
    SweepResult,
    parse_grid,
    build_grid,
    expand_grid,
    cell_config,
    run_sweep,
)
from .selftest import run_selftest

__all__ = [
    # Config
    "DEFAULT_OUTPUT_DIR",
    "ExperimentConfig",
    "build_config",
    "parse_config",
    "load_document",
    "default_workers",
    "lr_schedule",
    # Metrics
    "MetricsRow",
    "METRICS_HEADER",
    "write_csv",
    "read_csv",
    "final_accuracy",
    # Training loop
    "ExperimentState",
    "ExperimentResult",
    "load_datasets",
    "setup_experiment",
    "run_round",
    "train_rounds",
    "run_experiment",
    # Path functions
    "get_run_dir",
    "get_metrics_path",
    "get_model_path",
    "get_config_path",
    "get_cell_name",
    "get_cell_dir",
    "get_summary_path",
    "get_summary_mean_path",
    # State management
    "STAGES",
    "load_state",
    "save_state",
    "create_state",
    "load_sweep_state",
    # Pipeline
    "run_pipeline",
    # Sweeps
    "SweepGrid",
    "SweepCell",
    "CellResult",
    "SweepResult",
    "parse_grid",
    "build_grid",
    "expand_grid",
    "cell_config",
    "run_sweep",
    "run_selftest",
]
