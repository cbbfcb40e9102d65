"""
Data-level poisoning
"""
from .models import Dataset


def flip_labels(ds: Dataset) -> Dataset:
    """Map every label y to (C - 1) - y; features are shared, not copied."""
    flipped = (ds.num_classes - 1) - ds.labels
    return Dataset(features=ds.features, labels=flipped, num_classes=ds.num_classes)
