"""
Train Stage - federated rounds
"""
import logging
from typing import List

from ..experiment import ExperimentState, train_rounds
from ..metrics import MetricsRow, final_accuracy

logger = logging.getLogger(__name__)


def run_train_stage(state: ExperimentState, progress: bool = True) -> List[MetricsRow]:
    """Stage 2: run all rounds."""
    logger.info(f"Training for {state.cfg.rounds} rounds (LR drop at round {state.cfg.drop_round})...")
    rows = train_rounds(state, progress=progress)
    accuracy = final_accuracy(rows)
    if accuracy is not None:
        logger.info(f"  Final test accuracy: {accuracy:.4f}")
    return rows
