"""
Relocated orthogonal perturbation (ROP)

The attack builds a unit direction at a chosen angle to a target point that
interpolates the previous aggregate and the current benign mean, then places
it around a relocation point close to the server's clipping centre.
"""
import logging
import math

import numpy as np

from ..errors import DegenerateTarget
from ..vecmath import NORM_EPS, ParamVector, norm, orthogonal_rejection
from .config import RoundKnowledge

logger = logging.getLogger(__name__)


def _orthogonal_unit(m_hat: ParamVector) -> ParamVector:
    """Unit vector orthogonal to ``m_hat``, built from the all-ones vector.

    Falls back to e_1 when the all-ones vector is parallel to ``m_hat``.
    Returns a zero vector in one dimension, where no orthogonal direction exists.
    """
    ones = np.ones_like(m_hat)
    _, p_hat = orthogonal_rejection(ones, m_hat)
    if norm(p_hat) > NORM_EPS:
        return p_hat / norm(p_hat)
    logger.warning("ROP: all-ones vector is parallel to the target; using e_1 instead")
    e1 = np.zeros_like(m_hat)
    e1[0] = 1.0
    _, p_hat = orthogonal_rejection(e1, m_hat)
    if norm(p_hat) > NORM_EPS:
        return p_hat / norm(p_hat)
    logger.warning("ROP: no orthogonal direction exists; perturbation is along the target only")
    return np.zeros_like(m_hat)


def attack_direction(m_hat: ParamVector, angle_deg: float) -> ParamVector:
    """sin(angle) * orthogonal unit + cos(angle) * target unit."""
    try:
        p_unit = _orthogonal_unit(m_hat)
    except DegenerateTarget:
        logger.warning("ROP: target has zero norm; using the normalised all-ones direction")
        ones = np.ones_like(m_hat)
        return ones / norm(ones)
    theta = angle_deg * math.pi / 180.0
    return math.sin(theta) * p_unit + math.cos(theta) * (m_hat / norm(m_hat))


def rop(
    kn: RoundKnowledge,
    z: float = 1.0,
    lam: float = 0.9,
    rho: float = 1.0,
    angle_deg: float = 90.0,
) -> ParamVector:
    """The ROP submission for round ``kn.t``; in round 1 the reference is m-bar_1."""
    benign = kn.benign_mean
    reference = benign if kn.t == 1 else kn.prev_aggregate
    m_hat = lam * reference + (1.0 - lam) * benign
    delta = attack_direction(m_hat, angle_deg)
    return z * delta + rho * reference + (1.0 - rho) * benign
