"""
Aggregators module - server-side robust aggregation rules.
"""
from .config import (
    CLIP_TOL,
    AggregatorKind,
    AggregatorSpec,
    AggregateOutcome,
    BucketOrder,
)
from .basic import mean_agg, trimmed_mean_agg
from .clipping import (
    cc_clip,
    cc_agg,
    scc_agg,
    cosine_order,
    split_clusters,
    form_buckets,
)
from .rfa import rfa_agg, geometric_median_objective
from .dispatch import aggregate

__all__ = [
    # Config
    "CLIP_TOL",
    "AggregatorKind",
    "AggregatorSpec",
    "AggregateOutcome",
    "BucketOrder",
    # Rules
    "mean_agg",
    "trimmed_mean_agg",
    "cc_clip",
    "cc_agg",
    "scc_agg",
    "rfa_agg",
    # Helpers
    "cosine_order",
    "split_clusters",
    "form_buckets",
    "geometric_median_objective",
    # Routing
    "aggregate",
]
