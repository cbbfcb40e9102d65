"""
Client-side local step: sample, differentiate, update momentum
"""
from typing import Tuple

import numpy as np

from ..data import Dataset
from ..model import ModelSpec, loss_and_gradient
from ..vecmath import ParamVector
from .state import ClientState, client_rng


def sample_batch(state: ClientState, batch_size: int) -> np.ndarray:
    """Uniform draw from the shard; with replacement only if the shard is too small."""
    if batch_size < 1:
        raise ValueError(f"batch_size must be >= 1, got {batch_size}")
    replace = state.shard.size < batch_size
    return state.rng.choice(state.shard, size=batch_size, replace=replace)


def compute_gradient(
    state: ClientState,
    global_params: ParamVector,
    batch_size: int,
    spec: ModelSpec,
    ds: Dataset,
) -> Tuple[float, ParamVector]:
    """Loss and gradient of the global model on a fresh batch from the shard."""
    batch = sample_batch(state, batch_size)
    loss, grad = loss_and_gradient(spec, global_params, ds, batch)
    state.last_loss = loss
    return loss, grad


def update_momentum(state: ClientState, grad: ParamVector, beta: float) -> ParamVector:
    """m_new = (1 - beta) * g + beta * m_old, stored on the state."""
    if not 0.0 <= beta < 1.0:
        raise ValueError(f"beta must lie in [0, 1), got {beta}")
    state.momentum = (1.0 - beta) * grad + beta * state.momentum
    return state.momentum


def honest_step(
    state: ClientState,
    global_params: ParamVector,
    beta: float,
    batch_size: int,
    spec: ModelSpec,
    ds: Dataset,
) -> ParamVector:
    """The benign update rule, regardless of role."""
    _, grad = compute_gradient(state, global_params, batch_size, spec, ds)
    return update_momentum(state, grad, beta)


def local_step(
    state: ClientState,
    global_params: ParamVector,
    beta: float,
    batch_size: int,
    spec: ModelSpec,
    ds: Dataset,
) -> ParamVector:
    """One benign round: batch, gradient, momentum update. Returns the new momentum."""
    if state.is_byzantine:
        raise ValueError(
            f"local_step called on byzantine client {state.id}; "
            "byzantine submissions come from the attacks module"
        )
    return honest_step(state, global_params, beta, batch_size, spec, ds)


def reset(state: ClientState):
    """Zero the momentum and restart the client's random stream."""
    state.momentum = np.zeros_like(state.momentum)
    state.rng = client_rng(state.experiment_seed, state.id)
    state.last_loss = None
