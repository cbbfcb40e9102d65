"""
IDX (MNIST/FMNIST) binary format reader and writer

Layout (big-endian):
    images: magic 0x00000803, u32 count, u32 rows, u32 cols, count*rows*cols u8
    labels: magic 0x00000801, u32 count, count u8
"""
import logging
import struct
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from ..errors import IdxParseError
from .models import Dataset

logger = logging.getLogger(__name__)

IMAGES_MAGIC = 0x00000803
LABELS_MAGIC = 0x00000801

PathLike = Union[str, Path]


def _read_u32(raw: bytes, offset: int, path: PathLike) -> int:
    if len(raw) < offset + 4:
        raise IdxParseError(path, len(raw), "truncated file: header ends early")
    return struct.unpack_from(">I", raw, offset)[0]


def _parse_images(path: PathLike) -> Tuple[np.ndarray, int]:
    raw = Path(path).read_bytes()
    magic = _read_u32(raw, 0, path)
    if magic != IMAGES_MAGIC:
        raise IdxParseError(path, 0, f"bad magic 0x{magic:08x} (expected 0x{IMAGES_MAGIC:08x})")
    count = _read_u32(raw, 4, path)
    rows = _read_u32(raw, 8, path)
    cols = _read_u32(raw, 12, path)
    expected = count * rows * cols
    body = raw[16:]
    if len(body) < expected:
        raise IdxParseError(
            path, len(raw), f"truncated file: expected {expected} pixel bytes, found {len(body)}"
        )
    pixels = np.frombuffer(body, dtype=np.uint8, count=expected)
    return pixels.reshape(count, rows * cols), count


def _parse_labels(path: PathLike) -> Tuple[np.ndarray, int]:
    raw = Path(path).read_bytes()
    magic = _read_u32(raw, 0, path)
    if magic != LABELS_MAGIC:
        raise IdxParseError(path, 0, f"bad magic 0x{magic:08x} (expected 0x{LABELS_MAGIC:08x})")
    count = _read_u32(raw, 4, path)
    body = raw[8:]
    if len(body) < count:
        raise IdxParseError(
            path, len(raw), f"truncated file: expected {count} label bytes, found {len(body)}"
        )
    return np.frombuffer(body, dtype=np.uint8, count=count), count


def load_idx(
    images_path: PathLike,
    labels_path: PathLike,
    num_classes: Optional[int] = None,
) -> Dataset:
    """Load an IDX image/label pair; pixels are scaled to [0, 1] by /255.

    ``num_classes`` defaults to ``max(label) + 1`` (at least 2).
    """
    pixels, image_count = _parse_images(images_path)
    labels, label_count = _parse_labels(labels_path)
    if image_count != label_count:
        raise IdxParseError(
            labels_path, 4, f"count mismatch: {image_count} images vs {label_count} labels"
        )
    if num_classes is None:
        num_classes = max(2, int(labels.max()) + 1) if labels.size else 2
    features = pixels.astype(np.float64) / 255.0
    logger.debug(f"Loaded {image_count} IDX samples from {images_path}")
    return Dataset(features=features, labels=labels.astype(np.int64), num_classes=num_classes)


def write_idx(
    images_path: PathLike,
    labels_path: PathLike,
    images: np.ndarray,
    labels: np.ndarray,
):
    """Write uint8 images of shape (count, rows, cols) and their labels as IDX files."""
    images = np.asarray(images, dtype=np.uint8)
    labels = np.asarray(labels, dtype=np.uint8).reshape(-1)
    if images.ndim != 3:
        raise ValueError(f"images must have shape (count, rows, cols), got {images.shape}")
    if images.shape[0] != labels.shape[0]:
        raise ValueError("images and labels must have the same count")
    count, rows, cols = images.shape
    for path in (images_path, labels_path):
        Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(images_path, "wb") as f:
        f.write(struct.pack(">IIII", IMAGES_MAGIC, count, rows, cols))
        f.write(images.tobytes(order="C"))
    with open(labels_path, "wb") as f:
        f.write(struct.pack(">II", LABELS_MAGIC, count))
        f.write(labels.tobytes())
