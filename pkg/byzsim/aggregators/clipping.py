"""
Centred clipping and its sequential, bucketed variant (S-CC)
"""
import math
from typing import List, Sequence, Tuple

import numpy as np

from ..seeding import make_rng
from ..vecmath import NORM_EPS, ParamVector, check_same_dim, cosine_similarity, norm, ordered_mean
from .config import AggregateOutcome, BucketOrder


def cc_clip(m: ParamVector, center: ParamVector, tau: float) -> Tuple[ParamVector, float]:
    """Pull ``m`` back into the ball of radius ``tau`` around ``center``.

    Returns the clipped vector and the factor delta = min(1, tau / ||m - center||).
    Inside the ball ``m`` itself is returned.
    """
    check_same_dim(m, center)
    if tau <= 0:
        raise ValueError(f"tau must be > 0, got {tau}")
    gap = m - center
    gap_norm = norm(gap)
    if gap_norm <= NORM_EPS or gap_norm <= tau:
        return m.copy(), 1.0
    delta = tau / gap_norm
    return center + delta * gap, delta


def cc_agg(ms: Sequence[ParamVector], prev: ParamVector, tau: float, l: int = 1) -> AggregateOutcome:
    """``l`` rounds of clip-toward-centre then average, starting from ``prev``."""
    if l < 1:
        raise ValueError(f"Clipping iterations must be >= 1, got {l}")
    if len(ms) == 0:
        raise ValueError("Cannot aggregate an empty submission list")
    center = prev
    factors: List[float] = []
    for _ in range(l):
        clipped = []
        factors = []
        for m in ms:
            c, delta = cc_clip(m, center, tau)
            clipped.append(c)
            factors.append(delta)
        center = ordered_mean(clipped)
    return AggregateOutcome(aggregate=center, per_client_clip_factor=tuple(factors), iterations=l)


def cosine_order(ms: Sequence[ParamVector], reference: ParamVector) -> List[int]:
    """Client ids by descending cosine similarity to ``reference``; ties by id."""
    scores = [cosine_similarity(m, reference) for m in ms]
    return sorted(range(len(ms)), key=lambda i: (-scores[i], i))


def split_clusters(order: Sequence[int], n: int) -> List[List[int]]:
    """Cut ``order`` into ``n`` contiguous clusters whose sizes differ by at most one."""
    return [list(chunk) for chunk in np.array_split(np.asarray(order, dtype=np.int64), n)]


def form_buckets(clusters: Sequence[Sequence[int]], rng: np.random.Generator) -> List[List[int]]:
    """ceil(k/n) buckets; each takes one random member from every non-exhausted cluster."""
    k = sum(len(c) for c in clusters)
    n = len(clusters)
    pools = [list(c) for c in clusters]
    buckets = []
    for _ in range(math.ceil(k / n)):
        bucket = []
        for pool in pools:
            if pool:
                bucket.append(pool.pop(int(rng.integers(len(pool)))))
        buckets.append(bucket)
    return buckets


def scc_agg(
    ms: Sequence[ParamVector],
    prev: ParamVector,
    tau: float,
    n: int,
    seed: int,
    order: BucketOrder = BucketOrder.COSINE,
) -> AggregateOutcome:
    """Sequential centred clipping over cosine-stratified buckets.

    Each bucket mean is clipped against the running reference, which then
    becomes the clipped bucket mean. Every member inherits its bucket's factor.
    """
    k = len(ms)
    if not 1 <= n <= k:
        raise ValueError(f"S-CC needs 1 <= n <= k, got n={n}, k={k}")
    rng = make_rng(seed, "scc-buckets")
    if BucketOrder(order) == BucketOrder.RANDOM:
        client_order = [int(i) for i in rng.permutation(k)]
    else:
        client_order = cosine_order(ms, prev)
    buckets = form_buckets(split_clusters(client_order, n), rng)

    reference = prev
    factors = [1.0] * k
    for bucket in buckets:
        members = sorted(bucket)
        bucket_mean = ordered_mean([ms[i] for i in members])
        reference, delta = cc_clip(bucket_mean, reference, tau)
        for i in members:
            factors[i] = delta
    return AggregateOutcome(aggregate=reference, per_client_clip_factor=tuple(factors), iterations=len(buckets))
