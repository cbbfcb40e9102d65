"""
Data models for datasets and client partitions
"""
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Labelled classification data.

    Attributes:
        features: (n, f) float64 matrix, all entries finite
        labels: n integer labels in [0, num_classes)
        num_classes: number of classes C >= 2
    """
    features: np.ndarray
    labels: np.ndarray
    num_classes: int

    def __post_init__(self):
        features = np.array(self.features, dtype=np.float64)
        labels = np.array(self.labels, dtype=np.int64).reshape(-1)
        if features.ndim != 2:
            raise ValueError(f"features must be a 2-D matrix, got shape {features.shape}")
        if features.shape[0] != labels.shape[0]:
            raise ValueError(
                f"features has {features.shape[0]} rows but labels has {labels.shape[0]} entries"
            )
        if self.num_classes < 2:
            raise ValueError(f"num_classes must be >= 2, got {self.num_classes}")
        if labels.size and (labels.min() < 0 or labels.max() >= self.num_classes):
            raise ValueError(f"labels must lie in [0, {self.num_classes})")
        if not np.all(np.isfinite(features)):
            raise ValueError("features must be finite")
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    @property
    def num_samples(self) -> int:
        return int(self.labels.shape[0])

    @property
    def feature_dim(self) -> int:
        return int(self.features.shape[1])

    def class_indices(self) -> List[np.ndarray]:
        """Sample indices of each class, ascending."""
        return [np.flatnonzero(self.labels == c) for c in range(self.num_classes)]

    def to_dict(self) -> Dict[str, Any]:
        """Shape summary for logs and state files."""
        return {
            "num_samples": self.num_samples,
            "feature_dim": self.feature_dim,
            "num_classes": self.num_classes,
        }


@dataclass(frozen=True, eq=False)
class Partition:
    """
    Disjoint client shards covering every sample of a dataset exactly once.

    Attributes:
        shards: one ascending-or-dealt index array per client
        num_samples: size of the partitioned dataset
    """
    shards: Tuple[np.ndarray, ...]
    num_samples: int

    def __post_init__(self):
        shards = tuple(np.array(s, dtype=np.int64).reshape(-1) for s in self.shards)
        if not shards:
            raise ValueError("Partition needs at least one shard")
        for i, shard in enumerate(shards):
            if shard.size == 0:
                raise ValueError(f"Shard {i} is empty")
            shard.setflags(write=False)
        joined = np.concatenate(shards)
        if joined.size != self.num_samples or not np.array_equal(
            np.sort(joined), np.arange(self.num_samples)
        ):
            raise ValueError("Shards must be pairwise disjoint and cover every sample exactly once")
        object.__setattr__(self, "shards", shards)

    @property
    def num_clients(self) -> int:
        return len(self.shards)

    def sizes(self) -> List[int]:
        return [int(s.size) for s in self.shards]

    def class_histogram(self, ds: Dataset) -> np.ndarray:
        """(k, C) matrix of per-shard class counts."""
        hist = np.zeros((self.num_clients, ds.num_classes), dtype=np.int64)
        for i, shard in enumerate(self.shards):
            hist[i] = np.bincount(ds.labels[shard], minlength=ds.num_classes)
        return hist
