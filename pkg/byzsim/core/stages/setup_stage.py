"""
Setup Stage - data, shards, model and clients
"""
import logging
from pathlib import Path

from ...utils import save_json
from ..config import ExperimentConfig
from ..experiment import ExperimentState, setup_experiment
from ..paths import get_config_path

logger = logging.getLogger(__name__)


def run_setup_stage(run_dir: Path, cfg: ExperimentConfig, workers: int = None) -> ExperimentState:
    """Stage 1: build the experiment state and record the normalized config."""
    state = setup_experiment(cfg, workers)

    sizes = state.partition.sizes()
    logger.info(f"  Partition: {cfg.partition}, shard sizes {min(sizes)}..{max(sizes)}")
    knowledge = "omniscient" if state.attack.is_omniscient else "local"
    logger.info(f"  Attack: {state.attack.kind.value} ({knowledge}), aggregator: {state.aggregator.kind.value}")
    logger.info(f"  Workers: {state.workers}")

    config_path = get_config_path(run_dir)
    save_json(config_path, {
        **cfg.to_document(),
        "resolved": {
            "lr_drop_round": cfg.drop_round,
            "train": state.train.to_dict(),
            "test": state.test.to_dict(),
            "model": state.model.to_dict(),
            "attack": state.attack.to_dict(),
            "aggregator": state.aggregator.to_dict(),
        },
    })
    logger.info(f"  Config saved: {config_path}")
    return state
