"""
Gaussian-blob classification data
"""
import numpy as np

from ..seeding import make_rng
from .models import Dataset


def class_means(num_classes: int, feature_dim: int) -> np.ndarray:
    """Axis-aligned unit vectors e_0 .. e_{C-1} as class means."""
    means = np.zeros((num_classes, feature_dim), dtype=np.float64)
    means[np.arange(num_classes), np.arange(num_classes)] = 1.0
    return means


def generate_blobs(
    num_classes: int,
    per_class: int,
    feature_dim: int,
    noise_sigma: float,
    seed: int,
) -> Dataset:
    """Sample ``per_class`` points around each class mean with N(0, sigma^2) noise.

    Samples are ordered class by class. Output is a deterministic function
    of the arguments.
    """
    if num_classes < 2:
        raise ValueError(f"num_classes must be >= 2, got {num_classes}")
    if per_class < 1:
        raise ValueError(f"per_class must be >= 1, got {per_class}")
    if feature_dim < num_classes:
        raise ValueError(f"feature_dim ({feature_dim}) must be >= num_classes ({num_classes})")
    if noise_sigma < 0:
        raise ValueError(f"noise_sigma must be >= 0, got {noise_sigma}")

    rng = make_rng(seed, "blobs")
    means = class_means(num_classes, feature_dim)
    labels = np.repeat(np.arange(num_classes, dtype=np.int64), per_class)
    noise = rng.normal(0.0, 1.0, size=(labels.size, feature_dim)) * noise_sigma
    features = means[labels] + noise
    return Dataset(features=features, labels=labels, num_classes=num_classes)
