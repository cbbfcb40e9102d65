"""
Route the configured attack to one submission per Byzantine client
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

from ..client import ClientState, compute_gradient, honest_step
from ..data import Dataset
from ..model import ModelSpec
from ..vecmath import ParamVector
from .alie import alie, alie_zmax
from .bitflip import bit_flip
from .config import AttackKind, AttackSpec, RoundKnowledge
from .ipm import ipm
from .rop import rop

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LocalContext:
    """
    What a Byzantine client needs to run its own local computation.

    Attributes:
        global_params: theta_{t-1} broadcast this round
        beta: local momentum constant
        batch_size: local batch size
        model: model specification
        train: clean training data
        flipped: label-flipped training data (labelflip only)
    """
    global_params: ParamVector
    beta: float
    batch_size: int
    model: ModelSpec
    train: Dataset
    flipped: Optional[Dataset] = None


def resolve_alie_z(spec: AttackSpec, k: int, k_m: int) -> float:
    if spec.alie_z is not None:
        return spec.alie_z
    return alie_zmax(k, k_m)


def dispatch(
    spec: AttackSpec,
    kn: Optional[RoundKnowledge],
    states: Sequence[ClientState],
    ctx: LocalContext,
) -> List[ParamVector]:
    """One submission per Byzantine state, in the order of ``states``."""
    if not states:
        return []
    kind = AttackKind(spec.kind)

    if kind in (AttackKind.ALIE, AttackKind.IPM, AttackKind.ROP):
        if kn is None:
            raise ValueError(f"Attack {kind.value} needs the round knowledge")
        if kind == AttackKind.ALIE:
            shared = alie(kn, resolve_alie_z(spec, kn.k, kn.k_m), spec.alternate_sign)
        elif kind == AttackKind.IPM:
            shared = ipm(kn, spec.epsilon)
        else:
            shared = rop(kn, spec.z, spec.lam, spec.rho, spec.angle_deg)
        return [shared.copy() for _ in states]

    if kind == AttackKind.NONE:
        return [
            honest_step(s, ctx.global_params, ctx.beta, ctx.batch_size, ctx.model, ctx.train)
            for s in states
        ]

    if kind == AttackKind.BITFLIP:
        submissions = []
        for s in states:
            _, grad = compute_gradient(s, ctx.global_params, ctx.batch_size, ctx.model, ctx.train)
            submissions.append(bit_flip(grad, s, ctx.beta))
        return submissions

    if kind == AttackKind.LABELFLIP:
        if ctx.flipped is None:
            raise ValueError("labelflip needs the label-flipped training set")
        return [
            honest_step(s, ctx.global_params, ctx.beta, ctx.batch_size, ctx.model, ctx.flipped)
            for s in states
        ]

    raise ValueError(f"Unknown attack kind: {kind}")
