"""
Data module - datasets, client partitions and label poisoning.
"""
from .models import Dataset, Partition
from .synthetic import generate_blobs, class_means
from .idx import load_idx, write_idx, IMAGES_MAGIC, LABELS_MAGIC
from .partition import (
    PartitionKind,
    partition_iid,
    partition_dirichlet,
    make_partition,
    largest_remainder,
)
from .poison import flip_labels

__all__ = [
    # Models
    "Dataset",
    "Partition",
    # Sources
    "generate_blobs",
    "class_means",
    "load_idx",
    "write_idx",
    "IMAGES_MAGIC",
    "LABELS_MAGIC",
    # Partitioning
    "PartitionKind",
    "partition_iid",
    "partition_dirichlet",
    "make_partition",
    "largest_remainder",
    # Poisoning
    "flip_labels",
]
