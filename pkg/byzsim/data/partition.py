"""
Client partitioning: stratified IID and Dirichlet non-IID
"""
import logging
from enum import Enum
from typing import List

import numpy as np

from ..seeding import make_rng
from .models import Dataset, Partition

logger = logging.getLogger(__name__)

MAX_DIRICHLET_DRAWS = 100


class PartitionKind(str, Enum):
    """How samples are distributed across clients."""
    IID = "iid"
    DIRICHLET = "dirichlet"


def partition_iid(ds: Dataset, k: int, seed: int) -> Partition:
    """Shuffle each class and deal it round-robin over ``k`` shards."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rng = make_rng(seed, "partition-iid")
    shards: List[List[int]] = [[] for _ in range(k)]
    for c, idxs in enumerate(ds.class_indices()):
        if idxs.size < k:
            raise ValueError(f"Class {c} has {idxs.size} samples, fewer than k={k}")
        shuffled = rng.permutation(idxs)
        for j, sample in enumerate(shuffled):
            shards[j % k].append(int(sample))
    return Partition(shards=tuple(np.array(s, dtype=np.int64) for s in shards), num_samples=ds.num_samples)


def largest_remainder(proportions: np.ndarray, total: int) -> np.ndarray:
    """Integer counts summing to ``total`` that best match ``proportions * total``.

    Floors first, then hands the remainder to the largest fractional parts;
    ties go to the lower index.
    """
    raw = proportions * total
    counts = np.floor(raw).astype(np.int64)
    remainder = total - int(counts.sum())
    if remainder > 0:
        order = np.argsort(-(raw - counts), kind="stable")
        counts[order[:remainder]] += 1
    return counts


def _draw_dirichlet(ds: Dataset, k: int, alpha: float, rng: np.random.Generator) -> List[List[int]]:
    shards: List[List[int]] = [[] for _ in range(k)]
    for idxs in ds.class_indices():
        if idxs.size == 0:
            continue
        proportions = rng.dirichlet(np.full(k, alpha))
        counts = largest_remainder(proportions, idxs.size)
        shuffled = rng.permutation(idxs)
        bounds = np.concatenate([[0], np.cumsum(counts)])
        for client in range(k):
            shards[client].extend(int(s) for s in shuffled[bounds[client]:bounds[client + 1]])
    return shards


def partition_dirichlet(ds: Dataset, k: int, alpha: float, seed: int) -> Partition:
    """Split each class over clients with proportions drawn from Dir(alpha * 1_k).

    The whole partition is re-drawn while any shard is empty.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if alpha <= 0:
        raise ValueError(f"Dirichlet alpha must be > 0, got {alpha}")
    rng = make_rng(seed, "partition-dirichlet")
    for attempt in range(1, MAX_DIRICHLET_DRAWS + 1):
        shards = _draw_dirichlet(ds, k, alpha, rng)
        if all(shards):
            if attempt > 1:
                logger.debug(f"Dirichlet partition needed {attempt} draws to fill every shard")
            return Partition(
                shards=tuple(np.array(s, dtype=np.int64) for s in shards),
                num_samples=ds.num_samples,
            )
    raise ValueError(
        f"Dirichlet partition left a shard empty after {MAX_DIRICHLET_DRAWS} draws "
        f"(k={k}, alpha={alpha}, n={ds.num_samples})"
    )


def make_partition(ds: Dataset, kind: PartitionKind, k: int, seed: int, alpha: float = 1.0) -> Partition:
    if kind == PartitionKind.IID:
        return partition_iid(ds, k, seed)
    elif kind == PartitionKind.DIRICHLET:
        return partition_dirichlet(ds, k, alpha, seed)
    raise ValueError(f"Unknown partition kind: {kind}")
