"""
Model module - softmax classifiers over flat parameter vectors.
"""
from .config import ModelKind, ModelSpec
from .classifier import (
    Batch,
    init_params,
    forward_loss,
    gradient,
    loss_and_gradient,
    evaluate,
    predict,
    softmax,
    unpack,
    pack,
)

__all__ = [
    "ModelKind",
    "ModelSpec",
    "Batch",
    "init_params",
    "forward_loss",
    "gradient",
    "loss_and_gradient",
    "evaluate",
    "predict",
    "softmax",
    "unpack",
    "pack",
]
