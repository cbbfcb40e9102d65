"""
Bit-flip: honest momentum built on the negated gradient
"""
from ..client import ClientState, update_momentum
from ..vecmath import ParamVector


def bit_flip(own_gradient: ParamVector, state: ClientState, beta: float) -> ParamVector:
    """m_new = (1 - beta) * (-g) + beta * m_old, stored on the state."""
    if not state.is_byzantine:
        raise ValueError(f"bit_flip called on benign client {state.id}")
    return update_momentum(state, -own_gradient, beta)
