"""
RFA: geometric median by smoothed Weiszfeld iterations
"""
from typing import Sequence

import numpy as np

from ..vecmath import ParamVector, norm, ordered_mean, stack
from .config import AggregateOutcome

DISTANCE_FLOOR = 1e-8


def _distances(x: ParamVector, rows: np.ndarray) -> np.ndarray:
    return np.array([norm(row - x) for row in rows], dtype=np.float64)


def geometric_median_objective(x: ParamVector, rows: np.ndarray) -> float:
    """Sum of Euclidean distances from ``x`` to every row."""
    total = 0.0
    for d in _distances(x, rows):
        total += float(d)
    return total


def rfa_agg(ms: Sequence[ParamVector], max_iters: int = 100, tol: float = 1e-8) -> AggregateOutcome:
    """Approximate geometric median, starting from the mean.

    Weights are 1 / max(||x - m_i||, 1e-8); iteration stops once the iterate
    moves by at most ``tol`` or after ``max_iters`` updates.
    """
    rows = stack(ms)
    x = ordered_mean(ms)
    trace = [geometric_median_objective(x, rows)]
    iterations = 0
    for _ in range(max_iters):
        weights = 1.0 / np.maximum(_distances(x, rows), DISTANCE_FLOOR)
        weighted = np.zeros_like(x)
        weight_total = 0.0
        for w, row in zip(weights, rows):
            weighted = weighted + w * row
            weight_total += float(w)
        x_next = weighted / weight_total
        iterations += 1
        step = norm(x_next - x)
        x = x_next
        trace.append(geometric_median_objective(x, rows))
        if step <= tol:
            break
    return AggregateOutcome(
        aggregate=x,
        per_client_clip_factor=(1.0,) * rows.shape[0],
        iterations=iterations,
        objective_trace=tuple(trace),
    )
