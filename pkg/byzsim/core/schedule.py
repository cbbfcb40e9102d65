"""
Learning-rate schedule
"""
from .config import ExperimentConfig


def lr_schedule(cfg: ExperimentConfig, t: int) -> float:
    """eta0 before the drop round, eta0 * lr_drop_factor from it onward."""
    if t < 1:
        raise ValueError(f"Round index must be >= 1, got {t}")
    if t < cfg.drop_round:
        return cfg.eta0
    return cfg.eta0 * cfg.lr_drop_factor
