"""
Coordinate-wise aggregators: mean and trimmed mean
"""
from typing import Sequence

import numpy as np

from ..vecmath import ParamVector, ordered_mean, stack
from .config import AggregateOutcome


def mean_agg(ms: Sequence[ParamVector]) -> AggregateOutcome:
    """Arithmetic mean, summed in id order."""
    if len(ms) == 0:
        raise ValueError("Cannot aggregate an empty submission list")
    return AggregateOutcome(aggregate=ordered_mean(ms), per_client_clip_factor=(1.0,) * len(ms))


def trimmed_mean_agg(ms: Sequence[ParamVector], trim_k: int) -> AggregateOutcome:
    """Per coordinate: drop the ``trim_k`` smallest and largest values, average the rest."""
    rows = stack(ms)
    k = rows.shape[0]
    if trim_k < 0 or k - 2 * trim_k < 1:
        raise ValueError(f"Cannot trim {trim_k} from each end of {k} submissions")
    # stable sort keeps id order among equal values
    ordered = np.sort(rows, axis=0, kind="stable")
    kept = ordered[trim_k:k - trim_k]
    acc = np.zeros(rows.shape[1], dtype=np.float64)
    for row in kept:
        acc = acc + row
    return AggregateOutcome(aggregate=acc / kept.shape[0], per_client_clip_factor=(1.0,) * k)
