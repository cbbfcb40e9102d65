"""
Client module - benign client state machine.
"""
from .state import Role, ClientState, client_rng
from .local import (
    sample_batch,
    compute_gradient,
    update_momentum,
    honest_step,
    local_step,
    reset,
)

__all__ = [
    "Role",
    "ClientState",
    "client_rng",
    "sample_batch",
    "compute_gradient",
    "update_momentum",
    "honest_step",
    "local_step",
    "reset",
]
