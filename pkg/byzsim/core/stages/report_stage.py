"""
Report Stage - metrics CSV and final model
"""
import logging
from pathlib import Path
from typing import List

import numpy as np

from ..experiment import ExperimentState
from ..metrics import MetricsRow, write_csv
from ..paths import get_metrics_path, get_model_path

logger = logging.getLogger(__name__)


def run_report_stage(run_dir: Path, state: ExperimentState, rows: List[MetricsRow]):
    """Stage 3: write metrics.csv and final_model.npy."""
    metrics_path = get_metrics_path(run_dir)
    write_csv(rows, metrics_path)
    logger.info(f"  Metrics: {metrics_path} ({len(rows)} rows)")

    model_path = get_model_path(run_dir)
    model_path.parent.mkdir(parents=True, exist_ok=True)
    np.save(model_path, state.params)
    logger.info(f"  Model: {model_path}")

    if rows:
        clipped_byz = sum(1 for r in rows if r.clip_fraction_byz > 0)
        logger.info(f"  Rounds with clipped Byzantine submissions: {clipped_byz}/{len(rows)}")
