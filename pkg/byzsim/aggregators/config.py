"""
Aggregator configuration and result types
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from ..vecmath import ParamVector

# A client counts as clipped when its factor is below 1 - CLIP_TOL.
CLIP_TOL = 1e-9


class AggregatorKind(str, Enum):
    """Server-side aggregation rule."""
    MEAN = "mean"
    CC = "cc"
    TM = "tm"
    RFA = "rfa"
    SCC = "scc"


class BucketOrder(str, Enum):
    """How S-CC orders clients before clustering."""
    COSINE = "cosine"
    RANDOM = "random"


@dataclass(frozen=True)
class AggregatorSpec:
    """
    Configured aggregation rule.

    Attributes:
        kind: aggregation rule
        tau: clipping radius (cc, scc)
        clip_iters: centred-clipping refinement iterations l (cc)
        trim_k: values dropped from each end per coordinate (tm); None means k_m
        rfa_max_iters: Weiszfeld iteration cap
        rfa_tol: Weiszfeld stopping distance
        bucket_n: number of clusters n, also the maximal bucket size (scc)
        scc_order: cosine sort or seeded random order before clustering (scc)
        seed: base seed of the bucket draws (scc)
    """
    kind: AggregatorKind = AggregatorKind.MEAN
    tau: float = 1.0
    clip_iters: int = 1
    trim_k: Optional[int] = None
    rfa_max_iters: int = 100
    rfa_tol: float = 1e-8
    bucket_n: int = 3
    scc_order: BucketOrder = BucketOrder.COSINE
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", AggregatorKind(self.kind))
        object.__setattr__(self, "scc_order", BucketOrder(self.scc_order))
        if self.tau <= 0:
            raise ValueError(f"tau must be > 0, got {self.tau}")
        if self.clip_iters < 1:
            raise ValueError(f"clip_iters must be >= 1, got {self.clip_iters}")
        if self.trim_k is not None and self.trim_k < 0:
            raise ValueError(f"trim_k must be >= 0, got {self.trim_k}")
        if self.rfa_max_iters < 1:
            raise ValueError(f"rfa_max_iters must be >= 1, got {self.rfa_max_iters}")
        if self.bucket_n < 1:
            raise ValueError(f"bucket_n must be >= 1, got {self.bucket_n}")

    def validate_for(self, k: int, k_m: int):
        """Checks that depend on the client counts."""
        if self.kind == AggregatorKind.TM:
            trim = self.resolve_trim(k_m)
            if 2 * trim >= k:
                raise ValueError(f"Trimmed mean needs 2*trim_k < k, got trim_k={trim}, k={k}")
        if self.kind == AggregatorKind.SCC and self.bucket_n > k:
            raise ValueError(f"S-CC needs bucket_n <= k, got bucket_n={self.bucket_n}, k={k}")

    def resolve_trim(self, k_m: int) -> int:
        return k_m if self.trim_k is None else self.trim_k

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "tau": self.tau,
            "clip_iters": self.clip_iters,
            "trim_k": self.trim_k,
            "rfa_max_iters": self.rfa_max_iters,
            "rfa_tol": self.rfa_tol,
            "bucket_n": self.bucket_n,
            "scc_order": self.scc_order.value,
            "seed": self.seed,
        }


@dataclass(eq=False)
class AggregateOutcome:
    """
    Result of one aggregation.

    Attributes:
        aggregate: m~_t
        per_client_clip_factor: delta per client in id order (1.0 where nothing is clipped)
        iterations: refinement iterations performed (cc, rfa)
        objective_trace: Weiszfeld objective at every iterate, starting at x_0 (rfa)
    """
    aggregate: ParamVector
    per_client_clip_factor: Tuple[float, ...]
    iterations: int = 1
    objective_trace: Tuple[float, ...] = field(default_factory=tuple)

    def clipped_mask(self):
        return [f < 1.0 - CLIP_TOL for f in self.per_client_clip_factor]
