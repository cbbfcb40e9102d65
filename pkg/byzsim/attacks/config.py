"""
Attack configuration and the adversary's per-round knowledge
"""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

from ..vecmath import ParamVector, check_same_dim


class AttackKind(str, Enum):
    """Byzantine behaviour."""
    NONE = "none"
    ALIE = "alie"
    IPM = "ipm"
    ROP = "rop"
    BITFLIP = "bitflip"
    LABELFLIP = "labelflip"


# Attacks that need the benign submissions of the current round.
OMNISCIENT_ATTACKS = {AttackKind.ALIE, AttackKind.IPM, AttackKind.ROP}


@dataclass(frozen=True)
class AttackSpec:
    """
    Configured attack and its hyper-parameters.

    Attributes:
        kind: attack family
        z: ROP perturbation scale
        lam: ROP target interpolation between m~_{t-1} (1) and m-bar_t (0)
        rho: ROP relocation between m~_{t-1} (1) and m-bar_t (0)
        angle_deg: ROP angle between perturbation and target, degrees
        epsilon: IPM scale (written delta in the IPM expectation)
        alternate_sign: ALIE flips the sign of its perturbation on odd rounds
        alie_z: ALIE scale; None uses z_max(k, k_m)
    """
    kind: AttackKind = AttackKind.NONE
    z: float = 1.0
    lam: float = 0.9
    rho: float = 1.0
    angle_deg: float = 90.0
    epsilon: float = 0.2
    alternate_sign: bool = False
    alie_z: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", AttackKind(self.kind))
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam}")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must lie in [0, 1], got {self.rho}")
        if not 0.0 <= self.angle_deg <= 360.0:
            raise ValueError(f"angle_deg must lie in [0, 360], got {self.angle_deg}")
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")

    @property
    def is_omniscient(self) -> bool:
        return self.kind in OMNISCIENT_ATTACKS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "z": self.z,
            "lambda": self.lam,
            "rho": self.rho,
            "angle_deg": self.angle_deg,
            "epsilon": self.epsilon,
            "alternate_sign": self.alternate_sign,
            "alie_z": self.alie_z,
        }


@dataclass(frozen=True, eq=False)
class RoundKnowledge:
    """
    What the omniscient adversary sees at round t.

    Attributes:
        t: round index, >= 1
        benign_mean: m-bar_t over this round's benign submissions
        benign_std: index-wise population std of the same set
        prev_aggregate: server aggregate m~_{t-1}
        eta: learning rate of round t
        k: total clients
        k_m: Byzantine clients
    """
    t: int
    benign_mean: ParamVector
    benign_std: ParamVector
    prev_aggregate: ParamVector
    eta: float
    k: int
    k_m: int

    def __post_init__(self):
        if self.t < 1:
            raise ValueError(f"Round index must be >= 1, got {self.t}")
        if not 0 <= self.k_m < self.k:
            raise ValueError(f"Need 0 <= k_m < k, got k={self.k}, k_m={self.k_m}")
        check_same_dim(self.benign_mean, self.benign_std)
        check_same_dim(self.benign_mean, self.prev_aggregate)

    @property
    def dim(self) -> int:
        return int(self.benign_mean.size)
