"""
Model specification
"""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Tuple


class ModelKind(str, Enum):
    """Classifier family."""
    LOGREG = "logreg"
    MLP = "mlp"


@dataclass(frozen=True)
class ModelSpec:
    """
    Shape of a desk-scale classifier whose parameters live in one flat vector.

    Attributes:
        kind: logreg (multinomial logistic regression) or mlp (one tanh hidden layer)
        feature_dim: input dimension f
        num_classes: output classes C
        hidden: hidden width h (mlp only)
        init_seed: seed of the mlp weight initialisation

    Flat layout (row-major blocks, in order):
        logreg: W (C x f), b (C)
        mlp:    W1 (h x f), b1 (h), W2 (C x h), b2 (C)
    """
    kind: ModelKind = ModelKind.LOGREG
    feature_dim: int = 2
    num_classes: int = 2
    hidden: int = 0
    init_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        if self.feature_dim < 1:
            raise ValueError(f"feature_dim must be >= 1, got {self.feature_dim}")
        if self.num_classes < 2:
            raise ValueError(f"num_classes must be >= 2, got {self.num_classes}")
        if self.kind == ModelKind.MLP and self.hidden < 1:
            raise ValueError(f"mlp needs hidden >= 1, got {self.hidden}")

    def blocks(self) -> List[Tuple[str, Tuple[int, ...]]]:
        """Named parameter blocks in flat-vector order."""
        f, c, h = self.feature_dim, self.num_classes, self.hidden
        if self.kind == ModelKind.LOGREG:
            return [("W", (c, f)), ("b", (c,))]
        return [("W1", (h, f)), ("b1", (h,)), ("W2", (c, h)), ("b2", (c,))]

    @property
    def num_params(self) -> int:
        total = 0
        for _, shape in self.blocks():
            size = 1
            for n in shape:
                size *= n
            total += size
        return total

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "feature_dim": self.feature_dim,
            "num_classes": self.num_classes,
            "hidden": self.hidden,
            "init_seed": self.init_seed,
            "num_params": self.num_params,
        }
