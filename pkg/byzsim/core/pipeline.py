"""
Run pipeline: setup, train, report
"""
import logging
from pathlib import Path
from typing import Dict, Optional

from ..utils import attach_run_log, detach_run_log, log_section
from .config import ExperimentConfig
from .state import STAGES, create_state, save_state
from .stages import run_report_stage, run_setup_stage, run_train_stage

logger = logging.getLogger(__name__)

STATUS_ICONS = {"completed": "✓", "failed": "✗"}


def _mark(run_dir: Path, state: Dict, stage: str, status: str, error: Optional[str] = None):
    state["stages"][stage] = status
    if error is not None:
        state["error"] = error
    save_state(run_dir, state)


def run_pipeline(run_dir: Path, cfg: ExperimentConfig, workers: Optional[int] = None, progress: bool = True) -> bool:
    """Run every stage of a single experiment into ``run_dir``.

    Stage status and the error of a failed stage are recorded in state.json;
    the log of the run goes to run.log. Returns True when all stages completed.
    """
    run_dir = Path(run_dir)
    state = create_state(cfg.to_document())
    save_state(run_dir, state)
    handler = attach_run_log(run_dir)
    try:
        logger.info(f"Run directory: {run_dir}")
        experiment = rows = None
        for stage in STAGES:
            log_section(f"STAGE: {stage.upper()}")
            _mark(run_dir, state, stage, "running")
            try:
                if stage == "setup":
                    experiment = run_setup_stage(run_dir, cfg, workers)
                elif stage == "train":
                    rows = run_train_stage(experiment, progress)
                else:
                    run_report_stage(run_dir, experiment, rows)
            except Exception as e:
                _mark(run_dir, state, stage, "failed", str(e))
                logger.error(f"Stage {stage} failed: {e}", exc_info=True)
                break
            _mark(run_dir, state, stage, "completed")

        log_section("SUMMARY")
        for stage in STAGES:
            status = state["stages"][stage]
            logger.info(f"  [{STATUS_ICONS.get(status, '○')}] {stage}: {status}")
    finally:
        detach_run_log(handler)
    return all(state["stages"][s] == "completed" for s in STAGES)
