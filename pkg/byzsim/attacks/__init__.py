"""
Attacks module - Byzantine submission generators.
"""
from .config import AttackKind, AttackSpec, RoundKnowledge, OMNISCIENT_ATTACKS
from .alie import alie, alie_zmax, normal_cdf, normal_quantile, supporters
from .ipm import ipm
from .rop import rop, attack_direction
from .bitflip import bit_flip
from .dispatch import LocalContext, dispatch, resolve_alie_z

__all__ = [
    # Config
    "AttackKind",
    "AttackSpec",
    "RoundKnowledge",
    "OMNISCIENT_ATTACKS",
    # Attacks
    "alie",
    "alie_zmax",
    "normal_cdf",
    "normal_quantile",
    "supporters",
    "ipm",
    "rop",
    "attack_direction",
    "bit_flip",
    # Routing
    "LocalContext",
    "dispatch",
    "resolve_alie_z",
]
