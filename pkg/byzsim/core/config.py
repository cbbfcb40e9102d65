"""
Experiment configuration

Config documents are flat JSON/YAML mappings validated by pydantic; the
domain specs (attack, aggregator, model) are built from them afterwards.
"""
import json
import os
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..aggregators import AggregatorSpec
from ..attacks import AttackSpec, alie_zmax
from ..errors import ConfigError
from ..model import ModelKind, ModelSpec

PROJECT_ROOT = Path(__file__).parent.parent.parent

load_dotenv(dotenv_path=PROJECT_ROOT / ".env", override=False)

DEFAULT_OUTPUT_DIR = os.getenv("BYZSIM_OUTPUT_DIR", str(PROJECT_ROOT / "outputs"))


def default_workers() -> int:
    """Client worker count when the config does not set one (BYZSIM_WORKERS)."""
    raw = os.getenv("BYZSIM_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"BYZSIM_WORKERS must be an integer, got {raw!r}", ["BYZSIM_WORKERS"])


class ExperimentConfig(BaseModel):
    """One federated training run."""
    model_config = ConfigDict(extra="forbid", strict=True, populate_by_name=True, frozen=True)

    # Data source
    dataset: Literal["blobs", "idx"] = "blobs"
    blobs_num_classes: int = 10
    blobs_per_class: int = 100
    blobs_feature_dim: int = 10
    blobs_noise_sigma: float = 0.5
    blobs_test_per_class: int = 50
    idx_train_images: Optional[str] = None
    idx_train_labels: Optional[str] = None
    idx_test_images: Optional[str] = None
    idx_test_labels: Optional[str] = None
    idx_num_classes: Optional[int] = None

    # Federation
    partition: Literal["iid", "dirichlet"] = "iid"
    dirichlet_alpha: float = 1.0
    k: int
    k_m: int
    beta: float = 0.9

    # Attack
    attack: Literal["none", "alie", "ipm", "rop", "bitflip", "labelflip"] = "none"
    z: float = 1.0
    lam: float = Field(0.9, alias="lambda")
    rho: float = 1.0
    angle_deg: float = 90.0
    epsilon: float = 0.2
    alternate_sign: bool = False
    alie_z: Optional[float] = None

    # Aggregator
    aggregator: Literal["mean", "cc", "tm", "rfa", "scc"] = "mean"
    tau: float = 1.0
    clip_iters: int = 1
    trim_k: Optional[int] = None
    rfa_max_iters: int = 100
    rfa_tol: float = 1e-8
    bucket_n: int = 3
    scc_order: Literal["cosine", "random"] = "cosine"

    # Model
    model: Literal["logreg", "mlp"] = "logreg"
    hidden: int = 32

    # Schedule
    rounds: int = 500
    batch_size: int = 32
    eta0: float = 0.1
    lr_drop_round: Optional[int] = None
    lr_drop_factor: float = 0.1
    eval_every: int = 10

    seed: int = 0
    workers: Optional[int] = None
    out_path: Optional[str] = None

    @model_validator(mode="after")
    def _check_ranges(self) -> "ExperimentConfig":
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not 0 <= self.k_m < self.k:
            raise ValueError(f"k_m must satisfy 0 <= k_m < k, got k_m={self.k_m}, k={self.k}")
        if not 0.0 <= self.beta < 1.0:
            raise ValueError(f"beta must lie in [0, 1), got {self.beta}")
        if self.rounds < 0:
            raise ValueError(f"rounds must be >= 0, got {self.rounds}")
        if self.eta0 <= 0:
            raise ValueError(f"eta0 must be > 0, got {self.eta0}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.eval_every < 1:
            raise ValueError(f"eval_every must be >= 1, got {self.eval_every}")
        if self.lr_drop_round is not None and self.lr_drop_round < 1:
            raise ValueError(f"lr_drop_round must be >= 1, got {self.lr_drop_round}")
        if self.lr_drop_factor <= 0:
            raise ValueError(f"lr_drop_factor must be > 0, got {self.lr_drop_factor}")
        if self.workers is not None and self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.partition == "dirichlet" and self.dirichlet_alpha <= 0:
            raise ValueError(f"dirichlet_alpha must be > 0, got {self.dirichlet_alpha}")
        if self.dataset == "idx" and not (self.idx_train_images and self.idx_train_labels):
            raise ValueError("dataset 'idx' needs idx_train_images and idx_train_labels")
        if bool(self.idx_test_images) != bool(self.idx_test_labels):
            raise ValueError("idx_test_images and idx_test_labels must be given together")
        if self.model == "mlp" and self.hidden < 1:
            raise ValueError(f"mlp needs hidden >= 1, got {self.hidden}")
        if self.attack == "alie" and self.alie_z is None and self.k_m >= 1:
            alie_zmax(self.k, self.k_m)
        # Domain specs run their own checks
        self.attack_spec()
        self.aggregator_spec().validate_for(self.k, self.k_m)
        return self

    @property
    def drop_round(self) -> int:
        """Round from which eta0 * lr_drop_factor applies (75% of the run by default)."""
        if self.lr_drop_round is not None:
            return self.lr_drop_round
        return max(1, round(0.75 * self.rounds))

    def attack_spec(self) -> AttackSpec:
        return AttackSpec(
            kind=self.attack,
            z=self.z,
            lam=self.lam,
            rho=self.rho,
            angle_deg=self.angle_deg,
            epsilon=self.epsilon,
            alternate_sign=self.alternate_sign,
            alie_z=self.alie_z,
        )

    def aggregator_spec(self) -> AggregatorSpec:
        return AggregatorSpec(
            kind=self.aggregator,
            tau=self.tau,
            clip_iters=self.clip_iters,
            trim_k=self.trim_k,
            rfa_max_iters=self.rfa_max_iters,
            rfa_tol=self.rfa_tol,
            bucket_n=self.bucket_n,
            scc_order=self.scc_order,
            seed=self.seed,
        )

    def build_model_spec(self, feature_dim: int, num_classes: int) -> ModelSpec:
        kind = ModelKind(self.model)
        return ModelSpec(
            kind=kind,
            feature_dim=feature_dim,
            num_classes=num_classes,
            hidden=self.hidden if kind == ModelKind.MLP else 0,
            init_seed=self.seed,
        )

    def resolved_workers(self) -> int:
        return self.workers if self.workers is not None else default_workers()

    def to_document(self) -> Dict[str, Any]:
        """Flat document form; ``build_config(cfg.to_document())`` rebuilds the same config."""
        return self.model_dump(by_alias=True)

    def with_overrides(self, overrides: Dict[str, Any]) -> "ExperimentConfig":
        document = self.to_document()
        document.update(overrides)
        return build_config(document)


def _error_keys(exc: ValidationError) -> List[str]:
    keys = []
    for err in exc.errors():
        key = ".".join(str(part) for part in err.get("loc", ()))
        if key and key not in keys:
            keys.append(key)
    return keys


def _describe(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        key = ".".join(str(part) for part in err.get("loc", ()))
        msg = err.get("msg", "invalid")
        parts.append(f"{key}: {msg}" if key else msg)
    return "; ".join(parts)


def build_config(document: Dict[str, Any]) -> ExperimentConfig:
    """Validate a flat config mapping.

    Raises:
        ConfigError: on unknown keys, missing required keys, type mismatches
            or out-of-range values; ``keys`` names the offending fields.
    """
    if not isinstance(document, dict):
        raise ConfigError(f"Config must be a key-value mapping, got {type(document).__name__}")
    try:
        return ExperimentConfig.model_validate(document)
    except ValidationError as e:
        raise ConfigError(f"Invalid config: {_describe(e)}", _error_keys(e)) from e


def load_document(path) -> Any:
    """Read a JSON or YAML (.yaml/.yml) document."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read {path}: {e}") from e
    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            return yaml.safe_load(text)
        return json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ConfigError(f"Cannot parse {path}: {e}") from e


def parse_config(path) -> ExperimentConfig:
    """Load and validate an experiment config document."""
    return build_config(load_document(path))
