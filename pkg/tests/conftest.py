from typing import Any, Dict

import numpy as np
import pytest

from byzsim.core import ExperimentConfig, build_config
from byzsim.data import Dataset, generate_blobs

SMALL_RUN: Dict[str, Any] = {
    "k": 5,
    "k_m": 1,
    "rounds": 10,
    "blobs_num_classes": 3,
    "blobs_per_class": 20,
    "blobs_feature_dim": 4,
    "blobs_noise_sigma": 0.3,
    "blobs_test_per_class": 10,
    "batch_size": 8,
    "eval_every": 5,
    "seed": 11,
}


def small_config(**overrides) -> ExperimentConfig:
    document = dict(SMALL_RUN)
    document.update(overrides)
    return build_config(document)


@pytest.fixture
def make_config():
    return small_config


@pytest.fixture
def blobs() -> Dataset:
    return generate_blobs(num_classes=3, per_class=20, feature_dim=4, noise_sigma=0.3, seed=5)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
