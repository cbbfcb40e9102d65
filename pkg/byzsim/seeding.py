"""
Seed derivation for independent, order-free random streams
"""
import hashlib
from typing import Union

import numpy as np

StreamKey = Union[int, str]


def _key_to_int(key: StreamKey) -> int:
    if isinstance(key, (int, np.integer)):
        if key < 0:
            raise ValueError(f"Stream keys must be non-negative, got {key}")
        return int(key)
    digest = hashlib.blake2b(str(key).encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def make_rng(seed: int, *stream: StreamKey) -> np.random.Generator:
    """Generator for the stream named by ``(seed, *stream)``.

    Distinct key tuples give statistically independent generators, so clients
    and stages never share state and scheduling order does not matter.
    """
    entropy = [_key_to_int(seed)] + [_key_to_int(k) for k in stream]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def derive_seed(seed: int, *parts: StreamKey) -> int:
    """Stable 63-bit seed for ``(seed, *parts)`` (``hash()`` is salted per process)."""
    text = "|".join([str(int(seed))] + [str(p) for p in parts])
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1
