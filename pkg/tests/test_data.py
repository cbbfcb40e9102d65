import struct

import numpy as np
import pytest

from byzsim.data import (
    IMAGES_MAGIC,
    LABELS_MAGIC,
    Dataset,
    Partition,
    PartitionKind,
    class_means,
    flip_labels,
    generate_blobs,
    largest_remainder,
    load_idx,
    make_partition,
    partition_dirichlet,
    partition_iid,
    write_idx,
)
from byzsim.errors import IdxParseError
from byzsim.model import ModelKind, ModelSpec, evaluate, init_params, loss_and_gradient


# Blobs

def test_blobs_without_noise_sit_on_class_means():
    ds = generate_blobs(num_classes=3, per_class=4, feature_dim=5, noise_sigma=0.0, seed=1)
    means = class_means(3, 5)
    np.testing.assert_array_equal(ds.features, means[ds.labels])
    assert ds.num_samples == 12
    assert list(np.bincount(ds.labels)) == [4, 4, 4]


def test_blobs_deterministic_bytes():
    a = generate_blobs(num_classes=2, per_class=3, feature_dim=2, noise_sigma=0.1, seed=7)
    b = generate_blobs(num_classes=2, per_class=3, feature_dim=2, noise_sigma=0.1, seed=7)
    assert a.features.tobytes() == b.features.tobytes()
    assert a.labels.tobytes() == b.labels.tobytes()


def test_blobs_different_seeds_differ():
    a = generate_blobs(num_classes=2, per_class=3, feature_dim=2, noise_sigma=0.1, seed=7)
    b = generate_blobs(num_classes=2, per_class=3, feature_dim=2, noise_sigma=0.1, seed=8)
    assert not np.array_equal(a.features, b.features)


@pytest.mark.parametrize("kwargs", [
    dict(num_classes=1, per_class=3, feature_dim=2, noise_sigma=0.1),
    dict(num_classes=3, per_class=0, feature_dim=3, noise_sigma=0.1),
    dict(num_classes=4, per_class=3, feature_dim=3, noise_sigma=0.1),
    dict(num_classes=2, per_class=3, feature_dim=2, noise_sigma=-1.0),
])
def test_blobs_reject_invalid_sizes(kwargs):
    with pytest.raises(ValueError):
        generate_blobs(seed=0, **kwargs)


def test_blobs_are_learnable_by_logistic_regression():
    ds = generate_blobs(num_classes=10, per_class=100, feature_dim=10, noise_sigma=0.2, seed=3)
    spec = ModelSpec(kind=ModelKind.LOGREG, feature_dim=10, num_classes=10)
    params = init_params(spec)
    batch = np.arange(ds.num_samples)
    for _ in range(200):
        _, grad = loss_and_gradient(spec, params, ds, batch)
        params = params - 2.0 * grad
    accuracy, _ = evaluate(spec, params, ds)
    assert accuracy >= 0.9


def test_dataset_validates_labels():
    with pytest.raises(ValueError):
        Dataset(features=np.zeros((2, 2)), labels=[0, 2], num_classes=2)
    with pytest.raises(ValueError):
        Dataset(features=np.zeros((3, 2)), labels=[0, 1], num_classes=2)
    with pytest.raises(ValueError):
        Dataset(features=[[np.inf, 0.0]], labels=[0], num_classes=2)


# IDX

def test_load_idx_single_zero_image(tmp_path):
    images, labels = tmp_path / "img.idx", tmp_path / "lbl.idx"
    write_idx(images, labels, np.zeros((1, 2, 2), dtype=np.uint8), np.array([3]))
    ds = load_idx(images, labels)
    np.testing.assert_array_equal(ds.features, [[0.0, 0.0, 0.0, 0.0]])
    np.testing.assert_array_equal(ds.labels, [3])
    assert ds.num_classes == 4


def test_load_idx_scales_255_to_one(tmp_path):
    images, labels = tmp_path / "img.idx", tmp_path / "lbl.idx"
    write_idx(images, labels, np.full((1, 1, 2), 255, dtype=np.uint8), np.array([0]))
    assert load_idx(images, labels).features[0, 0] == 1.0


def test_load_idx_rejects_bad_magic(tmp_path):
    images, labels = tmp_path / "img.idx", tmp_path / "lbl.idx"
    images.write_bytes(struct.pack(">IIII", LABELS_MAGIC, 1, 1, 1) + b"\x00")
    labels.write_bytes(struct.pack(">II", LABELS_MAGIC, 1) + b"\x00")
    with pytest.raises(IdxParseError, match="bad magic") as err:
        load_idx(images, labels)
    assert err.value.offset == 0


def test_load_idx_rejects_truncated_pixels(tmp_path):
    images, labels = tmp_path / "img.idx", tmp_path / "lbl.idx"
    images.write_bytes(struct.pack(">IIII", IMAGES_MAGIC, 2, 2, 2) + b"\x00" * 5)
    labels.write_bytes(struct.pack(">II", LABELS_MAGIC, 2) + b"\x00\x01")
    with pytest.raises(IdxParseError, match="truncated") as err:
        load_idx(images, labels)
    assert err.value.offset == 21


def test_load_idx_rejects_truncated_header(tmp_path):
    images, labels = tmp_path / "img.idx", tmp_path / "lbl.idx"
    images.write_bytes(struct.pack(">I", IMAGES_MAGIC) + b"\x00\x00")
    labels.write_bytes(struct.pack(">II", LABELS_MAGIC, 0))
    with pytest.raises(IdxParseError, match="truncated"):
        load_idx(images, labels)


def test_load_idx_rejects_count_mismatch(tmp_path):
    images, labels = tmp_path / "img.idx", tmp_path / "lbl.idx"
    images.write_bytes(struct.pack(">IIII", IMAGES_MAGIC, 2, 1, 1) + b"\x00\x01")
    labels.write_bytes(struct.pack(">II", LABELS_MAGIC, 1) + b"\x00")
    with pytest.raises(IdxParseError, match="count mismatch"):
        load_idx(images, labels)


def test_idx_write_then_load_is_bit_exact(tmp_path, rng):
    pixels = rng.integers(0, 256, size=(6, 3, 4), dtype=np.uint8)
    labels = rng.integers(0, 10, size=6)
    write_idx(tmp_path / "i", tmp_path / "l", pixels, labels)
    ds = load_idx(tmp_path / "i", tmp_path / "l", num_classes=10)
    np.testing.assert_array_equal(ds.features, pixels.reshape(6, 12).astype(np.float64) / 255.0)
    np.testing.assert_array_equal(ds.labels, labels)
    restored = np.rint(ds.features * 255).astype(np.uint8).reshape(6, 3, 4)
    np.testing.assert_array_equal(restored, pixels)


# Partitions

def test_iid_single_client_holds_everything(blobs):
    part = partition_iid(blobs, k=1, seed=0)
    assert part.num_clients == 1
    np.testing.assert_array_equal(np.sort(part.shards[0]), np.arange(blobs.num_samples))


def test_iid_counts_per_shard_and_class():
    ds = generate_blobs(num_classes=10, per_class=100, feature_dim=10, noise_sigma=0.1, seed=0)
    part = partition_iid(ds, k=25, seed=4)
    assert part.sizes() == [40] * 25
    assert np.all(part.class_histogram(ds) == 4)


def test_iid_deterministic(blobs):
    a = partition_iid(blobs, k=4, seed=9)
    b = partition_iid(blobs, k=4, seed=9)
    for x, y in zip(a.shards, b.shards):
        np.testing.assert_array_equal(x, y)


def test_iid_rejects_small_class(blobs):
    with pytest.raises(ValueError, match="fewer than k"):
        partition_iid(blobs, k=21, seed=0)


def test_dirichlet_huge_alpha_splits_evenly():
    ds = generate_blobs(num_classes=4, per_class=100, feature_dim=4, noise_sigma=0.1, seed=0)
    for seed in range(5):
        hist = partition_dirichlet(ds, k=2, alpha=1e6, seed=seed).class_histogram(ds)
        shares = hist / hist.sum(axis=0, keepdims=True)
        assert np.all(np.abs(shares - 0.5) <= 0.02)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 100.0])
@pytest.mark.parametrize("k", [1, 3, 5])
def test_dirichlet_partition_is_disjoint_and_covering(blobs, alpha, k):
    part = partition_dirichlet(blobs, k=k, alpha=alpha, seed=2)
    joined = np.concatenate(part.shards)
    np.testing.assert_array_equal(np.sort(joined), np.arange(blobs.num_samples))
    assert all(size > 0 for size in part.sizes())


def test_dirichlet_deterministic(blobs):
    a = partition_dirichlet(blobs, k=3, alpha=0.5, seed=1)
    b = partition_dirichlet(blobs, k=3, alpha=0.5, seed=1)
    for x, y in zip(a.shards, b.shards):
        np.testing.assert_array_equal(x, y)


def test_dirichlet_rejects_nonpositive_alpha(blobs):
    with pytest.raises(ValueError):
        partition_dirichlet(blobs, k=2, alpha=0.0, seed=0)


def test_dirichlet_gives_heterogeneous_shards():
    ds = generate_blobs(num_classes=10, per_class=100, feature_dim=10, noise_sigma=0.1, seed=0)
    heterogeneous = 0
    for seed in range(10):
        hist = partition_dirichlet(ds, k=25, alpha=1.0, seed=seed).class_histogram(ds)
        shares = hist[:, 0] / hist.sum(axis=1)
        if shares.max() > 2 * max(shares.min(), 1e-12):
            heterogeneous += 1
    assert heterogeneous >= 8


def test_largest_remainder_sums_to_total():
    counts = largest_remainder(np.array([0.5, 0.25, 0.25]), 7)
    assert counts.sum() == 7
    assert list(counts) == [3, 2, 2]


def test_make_partition_routes(blobs):
    assert make_partition(blobs, PartitionKind.IID, 2, 0).num_clients == 2
    assert make_partition(blobs, PartitionKind.DIRICHLET, 2, 0, alpha=1.0).num_clients == 2


def test_partition_rejects_overlap():
    with pytest.raises(ValueError):
        Partition(shards=([0, 1], [1, 2]), num_samples=3)
    with pytest.raises(ValueError):
        Partition(shards=([0, 1, 2], []), num_samples=3)


# Label flipping

def test_flip_labels_mapping():
    ds = Dataset(features=np.zeros((3, 1)), labels=[3, 0, 9], num_classes=10)
    flipped = flip_labels(ds)
    np.testing.assert_array_equal(flipped.labels, [6, 9, 0])
    np.testing.assert_array_equal(flip_labels(flipped).labels, ds.labels)
    np.testing.assert_array_equal(flipped.features, ds.features)
