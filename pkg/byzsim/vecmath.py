"""
Flat-vector kernels shared by every other module.

A ParamVector is a 1-D, contiguous ``numpy.float64`` array. Models, gradients,
momenta and attack vectors all use this one representation.
"""
from typing import Sequence, Tuple

import numpy as np

from .errors import DegenerateTarget, DimensionMismatch

ParamVector = np.ndarray

# Norms below this are treated as zero.
NORM_EPS = 1e-12


def as_param_vector(data) -> ParamVector:
    """Copy ``data`` into a validated ParamVector."""
    vec = np.array(data, dtype=np.float64).reshape(-1)
    if vec.size < 1:
        raise ValueError("ParamVector must have dim >= 1")
    if not np.all(np.isfinite(vec)):
        raise ValueError("ParamVector entries must be finite")
    return vec


def zeros(dim: int) -> ParamVector:
    if dim < 1:
        raise ValueError("ParamVector must have dim >= 1")
    return np.zeros(dim, dtype=np.float64)


def check_same_dim(a: ParamVector, b: ParamVector):
    if a.shape != b.shape:
        raise DimensionMismatch(a.size, b.size)


def _ordered_sum(values: np.ndarray) -> float:
    """Left-to-right sum in ascending index order."""
    return float(np.cumsum(values)[-1])


def inner(a: ParamVector, b: ParamVector) -> float:
    """Inner product of two equal-length vectors."""
    check_same_dim(a, b)
    return _ordered_sum(a * b)


def norm(a: ParamVector) -> float:
    return float(np.sqrt(_ordered_sum(a * a)))


def cosine_similarity(a: ParamVector, b: ParamVector) -> float:
    """Cosine of the angle between ``a`` and ``b``; 0.0 if either is ~zero."""
    check_same_dim(a, b)
    na = norm(a)
    nb = norm(b)
    if na < NORM_EPS or nb < NORM_EPS:
        return 0.0
    return inner(a, b) / (na * nb)


def orthogonal_rejection(p: ParamVector, m: ParamVector) -> Tuple[ParamVector, ParamVector]:
    """Split ``p`` into its projection on ``m`` and the orthogonal remainder.

    Raises:
        DegenerateTarget: ``m`` has norm <= 1e-12.
    """
    check_same_dim(p, m)
    mm = inner(m, m)
    if np.sqrt(mm) <= NORM_EPS:
        raise DegenerateTarget(f"Cannot project onto a vector of norm {np.sqrt(mm):.3e}")
    proj = (inner(p, m) / mm) * m
    rej = p - proj
    return proj, rej


def stack(vs: Sequence[ParamVector]) -> np.ndarray:
    """Stack equal-length vectors into an (n, d) matrix, rows in input order."""
    if len(vs) == 0:
        raise ValueError("Cannot stack an empty set of vectors")
    first = vs[0]
    for v in vs[1:]:
        check_same_dim(first, v)
    return np.stack(vs, axis=0)


def ordered_mean(vs: Sequence[ParamVector]) -> ParamVector:
    """Arithmetic mean accumulated row by row in the given order."""
    rows = stack(vs)
    acc = np.zeros(rows.shape[1], dtype=np.float64)
    for row in rows:
        acc = acc + row
    return acc / rows.shape[0]


def index_stats(vs: Sequence[ParamVector]) -> Tuple[ParamVector, ParamVector]:
    """Index-wise mean and population standard deviation of a vector set."""
    rows = stack(vs)
    mean = rows.mean(axis=0)
    std = rows.std(axis=0, ddof=0)
    return mean, std
