"""
Softmax classifiers over flat parameter vectors

Cross-entropy loss, its exact gradient, and evaluation for the logreg and
mlp families described by ModelSpec.
"""
from typing import Dict, Sequence, Tuple

import numpy as np

from ..data import Dataset
from ..errors import DimensionMismatch
from ..seeding import make_rng
from ..vecmath import ParamVector
from .config import ModelKind, ModelSpec

Batch = np.ndarray


def unpack(spec: ModelSpec, params: ParamVector) -> Dict[str, np.ndarray]:
    """Views of the parameter blocks inside ``params``."""
    if params.ndim != 1 or params.size != spec.num_params:
        raise DimensionMismatch(params.size, spec.num_params)
    views = {}
    offset = 0
    for name, shape in spec.blocks():
        size = int(np.prod(shape))
        views[name] = params[offset:offset + size].reshape(shape)
        offset += size
    return views


def pack(spec: ModelSpec, blocks: Dict[str, np.ndarray]) -> ParamVector:
    return np.concatenate([blocks[name].reshape(-1) for name, _ in spec.blocks()]).astype(np.float64)


def init_params(spec: ModelSpec) -> ParamVector:
    """Zeros for logreg; Glorot-uniform weights and zero biases for mlp."""
    if spec.kind == ModelKind.LOGREG:
        return np.zeros(spec.num_params, dtype=np.float64)
    rng = make_rng(spec.init_seed, "mlp-init")
    blocks = {}
    for name, shape in spec.blocks():
        if len(shape) == 2:
            fan_out, fan_in = shape
            s = np.sqrt(6.0 / (fan_in + fan_out))
            blocks[name] = rng.uniform(-s, s, size=shape)
        else:
            blocks[name] = np.zeros(shape, dtype=np.float64)
    return pack(spec, blocks)


def softmax(logits: np.ndarray) -> np.ndarray:
    """Row-wise softmax with max subtraction."""
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def _log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def _forward(spec: ModelSpec, views: Dict[str, np.ndarray], x: np.ndarray):
    if spec.kind == ModelKind.LOGREG:
        return x @ views["W"].T + views["b"], None
    hidden = np.tanh(x @ views["W1"].T + views["b1"])
    return hidden @ views["W2"].T + views["b2"], hidden


def _check_batch(ds: Dataset, batch: Sequence[int]) -> np.ndarray:
    idx = np.asarray(batch, dtype=np.int64).reshape(-1)
    if idx.size < 1:
        raise ValueError("Batch must contain at least one sample")
    if idx.min() < 0 or idx.max() >= ds.num_samples:
        raise IndexError(f"Batch index out of range for dataset of {ds.num_samples} samples")
    return idx


def forward_loss(spec: ModelSpec, params: ParamVector, ds: Dataset, batch: Batch) -> float:
    """Mean cross-entropy over the batch."""
    views = unpack(spec, params)
    idx = _check_batch(ds, batch)
    logits, _ = _forward(spec, views, ds.features[idx])
    log_probs = _log_softmax(logits)
    return float(-log_probs[np.arange(idx.size), ds.labels[idx]].mean())


def loss_and_gradient(
    spec: ModelSpec, params: ParamVector, ds: Dataset, batch: Batch
) -> Tuple[float, ParamVector]:
    """Mean cross-entropy and its exact gradient with respect to ``params``."""
    views = unpack(spec, params)
    idx = _check_batch(ds, batch)
    x = ds.features[idx]
    y = ds.labels[idx]
    n = idx.size

    logits, hidden = _forward(spec, views, x)
    log_probs = _log_softmax(logits)
    loss = float(-log_probs[np.arange(n), y].mean())

    # d loss / d logits
    delta = np.exp(log_probs)
    delta[np.arange(n), y] -= 1.0
    delta /= n

    grads = {}
    if spec.kind == ModelKind.LOGREG:
        grads["W"] = delta.T @ x
        grads["b"] = delta.sum(axis=0)
    else:
        grads["W2"] = delta.T @ hidden
        grads["b2"] = delta.sum(axis=0)
        back = (delta @ views["W2"]) * (1.0 - hidden ** 2)
        grads["W1"] = back.T @ x
        grads["b1"] = back.sum(axis=0)
    return loss, pack(spec, grads)


def gradient(spec: ModelSpec, params: ParamVector, ds: Dataset, batch: Batch) -> ParamVector:
    return loss_and_gradient(spec, params, ds, batch)[1]


def _argmax_classes(logits: np.ndarray) -> np.ndarray:
    return np.argmax(logits, axis=1)


def predict(spec: ModelSpec, params: ParamVector, features: np.ndarray) -> np.ndarray:
    """Argmax class per row; ties resolve to the lower class index."""
    logits, _ = _forward(spec, unpack(spec, params), features)
    return _argmax_classes(logits)


def evaluate(spec: ModelSpec, params: ParamVector, ds: Dataset) -> Tuple[float, float]:
    """(accuracy, mean cross-entropy) over the whole dataset."""
    views = unpack(spec, params)
    logits, _ = _forward(spec, views, ds.features)
    log_probs = _log_softmax(logits)
    n = ds.num_samples
    accuracy = float(np.mean(_argmax_classes(logits) == ds.labels))
    mean_loss = float(-log_probs[np.arange(n), ds.labels].mean())
    return accuracy, mean_loss
