"""
Inner-product manipulation
"""
from ..vecmath import ParamVector
from .config import RoundKnowledge


def ipm(kn: RoundKnowledge, epsilon: float) -> ParamVector:
    """Scaled inversion of the benign mean: -epsilon * m-bar."""
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    return -epsilon * kn.benign_mean
