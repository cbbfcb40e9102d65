"""
Route the configured aggregator
"""
from typing import Sequence

from ..seeding import derive_seed
from ..vecmath import ParamVector
from .basic import mean_agg, trimmed_mean_agg
from .clipping import cc_agg, scc_agg
from .config import AggregateOutcome, AggregatorKind, AggregatorSpec
from .rfa import rfa_agg


def aggregate(
    spec: AggregatorSpec,
    ms: Sequence[ParamVector],
    prev: ParamVector,
    t: int,
    k_m: int,
) -> AggregateOutcome:
    """Apply ``spec`` to the id-ordered submissions of round ``t``.

    S-CC bucket draws use a seed salted with the round index.
    """
    kind = AggregatorKind(spec.kind)
    if kind == AggregatorKind.MEAN:
        return mean_agg(ms)
    elif kind == AggregatorKind.CC:
        return cc_agg(ms, prev, spec.tau, spec.clip_iters)
    elif kind == AggregatorKind.TM:
        return trimmed_mean_agg(ms, spec.resolve_trim(k_m))
    elif kind == AggregatorKind.RFA:
        return rfa_agg(ms, spec.rfa_max_iters, spec.rfa_tol)
    elif kind == AggregatorKind.SCC:
        return scc_agg(ms, prev, spec.tau, spec.bucket_n, derive_seed(spec.seed, "scc", t), spec.scc_order)
    raise ValueError(f"Unknown aggregator kind: {kind}")
