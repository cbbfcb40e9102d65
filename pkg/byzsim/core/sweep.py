"""
Grid sweeps over experiment configs

A grid document maps config keys to lists of values. Every cell of the
Cartesian product is one run, seeded from the base seed and the cell's
parameters; cell failures are recorded and the sweep moves on.
"""
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from tqdm import tqdm

from ..errors import ConfigError
from ..seeding import derive_seed
from ..utils import log_section, save_csv
from .config import ExperimentConfig, load_document
from .experiment import run_experiment
from .metrics import final_accuracy, final_test_loss, write_csv
from .paths import get_cell_dir, get_cell_name, get_summary_mean_path, get_summary_path
from .state import create_sweep_state, save_sweep_state

logger = logging.getLogger(__name__)

SEED_AXIS = "seed"


class SweepGrid(BaseModel):
    """Axes of a sweep; keys use the config document names."""
    model_config = ConfigDict(extra="forbid", strict=True, populate_by_name=True, frozen=True)

    attack: Optional[List[Literal["none", "alie", "ipm", "rop", "bitflip", "labelflip"]]] = None
    aggregator: Optional[List[Literal["mean", "cc", "tm", "rfa", "scc"]]] = None
    lam: Optional[List[float]] = Field(None, alias="lambda")
    rho: Optional[List[float]] = None
    angle_deg: Optional[List[float]] = None
    z: Optional[List[float]] = None
    epsilon: Optional[List[float]] = None
    alternate_sign: Optional[List[bool]] = None
    tau: Optional[List[float]] = None
    bucket_n: Optional[List[int]] = None
    beta: Optional[List[float]] = None
    k: Optional[List[int]] = None
    k_m: Optional[List[int]] = None
    partition: Optional[List[Literal["iid", "dirichlet"]]] = None
    dirichlet_alpha: Optional[List[float]] = None
    seed: Optional[List[int]] = None

    @model_validator(mode="after")
    def _check_axes(self) -> "SweepGrid":
        if not self.axes():
            raise ValueError("grid must define at least one axis")
        for key, values in self.axes():
            if len(values) == 0:
                raise ValueError(f"grid axis '{key}' is empty")
        return self

    def axes(self) -> List[Tuple[str, List[Any]]]:
        """(document key, values) for every axis present, in declaration order."""
        result = []
        for name, info in type(self).model_fields.items():
            values = getattr(self, name)
            if values is not None:
                result.append((info.alias or name, list(values)))
        return result


@dataclass
class SweepCell:
    """
    One grid point.

    Attributes:
        index: position in grid order
        params: axis values keyed by document name
        name: directory name derived from ``params``
        seed: derived run seed
    """
    index: int
    params: Dict[str, Any]
    name: str
    seed: int


@dataclass
class CellResult:
    cell: SweepCell
    status: str = "pending"
    final_accuracy: Optional[float] = None
    final_test_loss: Optional[float] = None
    final_train_loss: Optional[float] = None
    error: Optional[str] = None


@dataclass
class SweepResult:
    results: List[CellResult] = field(default_factory=list)

    @property
    def failed(self) -> List[CellResult]:
        return [r for r in self.results if r.status == "failed"]


def parse_grid(path) -> SweepGrid:
    """Load and validate a grid document."""
    document = load_document(path)
    return build_grid(document)


def build_grid(document: Dict[str, Any]) -> SweepGrid:
    if not isinstance(document, dict):
        raise ConfigError(f"Grid must be a key-value mapping, got {type(document).__name__}")
    try:
        return SweepGrid.model_validate(document)
    except ValidationError as e:
        keys = [".".join(str(p) for p in err.get("loc", ())) for err in e.errors()]
        raise ConfigError(f"Invalid grid: {e}", [k for k in keys if k]) from e


def cell_seed(base_seed: int, params: Dict[str, Any]) -> int:
    """Run seed of a cell: hash of the base (or seed-axis) seed and the other axis values."""
    seed = params.get(SEED_AXIS, base_seed)
    others = {key: value for key, value in params.items() if key != SEED_AXIS}
    return derive_seed(seed, get_cell_name(others))


def expand_grid(base_cfg: ExperimentConfig, grid: SweepGrid) -> List[SweepCell]:
    """Cartesian product of the grid axes, first axis varying slowest."""
    axes = grid.axes()
    keys = [key for key, _ in axes]
    cells = []
    for index, combo in enumerate(itertools.product(*(values for _, values in axes))):
        params = dict(zip(keys, combo))
        cells.append(SweepCell(
            index=index,
            params=params,
            name=get_cell_name(params),
            seed=cell_seed(base_cfg.seed, params),
        ))
    return cells


def cell_config(base_cfg: ExperimentConfig, cell: SweepCell) -> ExperimentConfig:
    overrides = {key: value for key, value in cell.params.items() if key != SEED_AXIS}
    overrides["seed"] = cell.seed
    overrides["out_path"] = None
    return base_cfg.with_overrides(overrides)


def run_cell(base_cfg: ExperimentConfig, cell: SweepCell, sweep_dir: Path) -> CellResult:
    """Run one cell into cells/<name>/metrics.csv; errors become a failed result."""
    result = CellResult(cell=cell)
    try:
        cfg = cell_config(base_cfg, cell)
        experiment = run_experiment(cfg, workers=1)
        write_csv(experiment.rows, get_cell_dir(sweep_dir, cell.params) / "metrics.csv")
        result.status = "completed"
        result.final_accuracy = final_accuracy(experiment.rows)
        result.final_test_loss = final_test_loss(experiment.rows)
        if experiment.rows:
            result.final_train_loss = experiment.rows[-1].train_loss
    except Exception as e:
        result.status = "failed"
        result.error = f"{type(e).__name__}: {e}"
        logger.error(f"Cell {cell.name} failed: {result.error}")
    return result


def summary_rows(results: List[CellResult], keys: List[str]) -> List[List[Any]]:
    rows = []
    for r in results:
        rows.append(
            [r.cell.name]
            + [r.cell.params.get(key) for key in keys]
            + [r.cell.seed, r.status, r.final_accuracy, r.final_test_loss, r.final_train_loss]
        )
    return rows


def summary_mean_rows(results: List[CellResult], keys: List[str]) -> List[List[Any]]:
    """Mean and population std of final accuracy over cells differing only in seed."""
    group_keys = [key for key in keys if key != SEED_AXIS]
    groups: Dict[Tuple, List[CellResult]] = {}
    for r in results:
        signature = tuple(r.cell.params.get(key) for key in group_keys)
        groups.setdefault(signature, []).append(r)

    rows = []
    for signature, members in groups.items():
        accuracies = [m.final_accuracy for m in members if m.status == "completed" and m.final_accuracy is not None]
        if accuracies:
            mean, std = float(np.mean(accuracies)), float(np.std(accuracies))
        else:
            mean = std = None
        rows.append(list(signature) + [len(members), len(accuracies), mean, std])
    return rows


def write_summaries(sweep_dir: Path, grid: SweepGrid, results: List[CellResult]):
    keys = [key for key, _ in grid.axes()]
    save_csv(
        get_summary_path(sweep_dir),
        ["cell"] + keys + ["run_seed", "status", "final_test_accuracy", "final_test_loss", "final_train_loss"],
        summary_rows(results, keys),
    )
    group_keys = [key for key in keys if key != SEED_AXIS]
    save_csv(
        get_summary_mean_path(sweep_dir),
        group_keys + ["cells", "completed", "mean_final_test_accuracy", "std_final_test_accuracy"],
        summary_mean_rows(results, keys),
    )


def run_sweep(
    base_cfg: ExperimentConfig,
    grid: SweepGrid,
    sweep_dir: Path,
    workers: int = 1,
    progress: bool = True,
) -> SweepResult:
    """Run every cell of ``grid`` on top of ``base_cfg``.

    Cells run on ``workers`` threads; summaries list cells in grid order
    regardless of completion order.
    """
    sweep_dir = Path(sweep_dir)
    cells = expand_grid(base_cfg, grid)
    state = create_sweep_state([c.name for c in cells])
    save_sweep_state(sweep_dir, state)

    log_section(f"SWEEP: {len(cells)} cells")
    results: Dict[int, CellResult] = {}

    def record(result: CellResult):
        results[result.cell.index] = result
        entry = {"status": result.status, "run_seed": result.cell.seed}
        if result.error:
            entry["error"] = result.error
        if result.final_accuracy is not None:
            entry["final_test_accuracy"] = result.final_accuracy
        state["cells"][result.cell.name] = entry
        save_sweep_state(sweep_dir, state)

    with tqdm(total=len(cells), desc="Cells", disable=not progress) as bar:
        if workers <= 1:
            for cell in cells:
                record(run_cell(base_cfg, cell, sweep_dir))
                bar.update(1)
        else:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                futures = {executor.submit(run_cell, base_cfg, cell, sweep_dir): cell for cell in cells}
                for future in as_completed(futures):
                    record(future.result())
                    bar.update(1)

    ordered = [results[i] for i in range(len(cells))]
    write_summaries(sweep_dir, grid, ordered)

    log_section("SUMMARY")
    for r in ordered:
        icon = "✓" if r.status == "completed" else "✗"
        accuracy = f"{r.final_accuracy:.4f}" if r.final_accuracy is not None else "-"
        logger.info(f"  [{icon}] {r.cell.name}: {accuracy}")
    logger.info(f"Summary: {get_summary_path(sweep_dir)}")
    return SweepResult(results=ordered)
