"""
Per-round telemetry and its CSV form
"""
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import List, Optional, Sequence

from ..utils import load_csv, save_csv


@dataclass(frozen=True)
class MetricsRow:
    """
    Telemetry of one round. Field order is the CSV column order.

    Attributes:
        round: round index t
        eta: learning rate used in round t
        test_accuracy: held-out accuracy after the update (None when not evaluated)
        test_loss: held-out mean cross-entropy (None when not evaluated)
        train_loss: mean loss of this round's benign batches
        clip_fraction_benign: share of benign clients with clip factor < 1
        clip_fraction_byz: share of Byzantine clients with clip factor < 1
        cos_ref_benign: cos(m~_{t-1}, m-bar_t)
        cos_ref_byz: cos(m~_{t-1}, Byzantine submission); 0 without Byzantines
        cos_delta_prev: cos(D_t, D_{t-1}), D_t = Byzantine submission - m-bar_t; 0 in round 1
        ref_gap_norm: ||m-bar_t - m~_{t-1}||
        byz_gap_norm: ||Byzantine submission - m~_{t-1}||; 0 without Byzantines
        cos_agg_benign: cos(m~_t, m-bar_t)
        agg_norm: ||m~_t||
        evaluated: whether the test metrics were computed this round
    """
    round: int
    eta: float
    test_accuracy: Optional[float]
    test_loss: Optional[float]
    train_loss: float
    clip_fraction_benign: float
    clip_fraction_byz: float
    cos_ref_benign: float
    cos_ref_byz: float
    cos_delta_prev: float
    ref_gap_norm: float
    byz_gap_norm: float
    cos_agg_benign: float
    agg_norm: float
    evaluated: bool

    def __post_init__(self):
        if self.test_accuracy is not None and not 0.0 <= self.test_accuracy <= 1.0:
            raise ValueError(f"test_accuracy must lie in [0, 1], got {self.test_accuracy}")
        for name in ("clip_fraction_benign", "clip_fraction_byz"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


METRICS_HEADER = [f.name for f in fields(MetricsRow)]
_INT_FIELDS = {"round"}
_BOOL_FIELDS = {"evaluated"}


def write_csv(rows: Sequence[MetricsRow], path: Path):
    """Write rows under the fixed header; floats at 6 decimals, blanks for None."""
    save_csv(Path(path), METRICS_HEADER, (astuple(row) for row in rows))


def _parse_cell(name: str, raw: str):
    if raw == "":
        return None
    if name in _INT_FIELDS:
        return int(raw)
    if name in _BOOL_FIELDS:
        return raw not in ("0", "False", "false")
    return float(raw)


def read_csv(path: Path) -> List[MetricsRow]:
    """Parse a metrics file written by ``write_csv``."""
    records = load_csv(Path(path))
    if records and list(records[0].keys()) != METRICS_HEADER:
        raise ValueError(f"{path}: unexpected header {list(records[0].keys())}")
    return [MetricsRow(**{name: _parse_cell(name, rec[name]) for name in METRICS_HEADER}) for rec in records]


def final_accuracy(rows: Sequence[MetricsRow]) -> Optional[float]:
    """Test accuracy of the last evaluated round."""
    for row in reversed(rows):
        if row.evaluated:
            return row.test_accuracy
    return None


def final_test_loss(rows: Sequence[MetricsRow]) -> Optional[float]:
    for row in reversed(rows):
        if row.evaluated:
            return row.test_loss
    return None
