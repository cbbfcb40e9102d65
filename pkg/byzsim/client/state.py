"""
Client state
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from ..seeding import make_rng
from ..vecmath import ParamVector


class Role(str, Enum):
    """Client role."""
    BENIGN = "benign"
    BYZANTINE = "byzantine"


@dataclass(eq=False)
class ClientState:
    """
    One client's identity, role, local momentum and data shard.

    Attributes:
        id: client index in [0, k)
        role: benign or byzantine
        momentum: local momentum m_{i,t}; zero before the first round
        shard: sample indices owned by this client
        experiment_seed: seed the client's random stream is keyed on
        rng: generator for batch draws, unique to (experiment_seed, id)
        last_loss: loss of the most recent local batch (telemetry)
    """
    id: int
    role: Role
    momentum: ParamVector
    shard: np.ndarray
    experiment_seed: int
    rng: np.random.Generator = field(repr=False, default=None)
    last_loss: Optional[float] = None

    def __post_init__(self):
        self.role = Role(self.role)
        if self.rng is None:
            self.rng = client_rng(self.experiment_seed, self.id)

    @classmethod
    def create(cls, id: int, role: Role, dim: int, shard, experiment_seed: int) -> "ClientState":
        return cls(
            id=id,
            role=role,
            momentum=np.zeros(dim, dtype=np.float64),
            shard=np.asarray(shard, dtype=np.int64),
            experiment_seed=experiment_seed,
        )

    @property
    def is_byzantine(self) -> bool:
        return self.role == Role.BYZANTINE


def client_rng(experiment_seed: int, client_id: int) -> np.random.Generator:
    return make_rng(experiment_seed, "client", client_id)
