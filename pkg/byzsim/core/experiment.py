"""
Federated training loop: one server, k clients, k_m of them Byzantine
"""
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from ..aggregators import AggregatorSpec, aggregate
from ..attacks import AttackKind, AttackSpec, LocalContext, RoundKnowledge, dispatch
from ..client import ClientState, Role, local_step
from ..data import Dataset, Partition, PartitionKind, flip_labels, generate_blobs, load_idx, make_partition
from ..errors import RoundError
from ..model import ModelSpec, evaluate, init_params
from ..seeding import derive_seed
from ..vecmath import ParamVector, cosine_similarity, index_stats, norm, ordered_mean, zeros
from .config import ExperimentConfig
from .metrics import MetricsRow
from .schedule import lr_schedule

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class ExperimentState:
    """
    Everything that carries over from one round to the next.

    Attributes:
        cfg: validated experiment config
        model: classifier shape
        train: training data shared by all shards
        test: held-out evaluation data
        partition: client shards over ``train``
        clients: client states in id order
        params: server model theta_t
        prev_aggregate: m~_{t-1}; the attacks' reference and the clipping centre
        prev_delta: Byzantine submission minus m-bar of the previous round
        attack: attack spec
        aggregator: aggregator spec
        workers: client worker threads
        flipped: label-flipped copy of ``train`` (labelflip only)
        round_index: last completed round
    """
    cfg: ExperimentConfig
    model: ModelSpec
    train: Dataset
    test: Dataset
    partition: Partition
    clients: List[ClientState]
    params: ParamVector
    prev_aggregate: ParamVector
    attack: AttackSpec
    aggregator: AggregatorSpec
    workers: int = 1
    flipped: Optional[Dataset] = None
    prev_delta: Optional[ParamVector] = None
    round_index: int = 0

    @property
    def benign(self) -> List[ClientState]:
        return [c for c in self.clients if not c.is_byzantine]

    @property
    def byzantine(self) -> List[ClientState]:
        return [c for c in self.clients if c.is_byzantine]


@dataclass(eq=False)
class ExperimentResult:
    rows: List[MetricsRow] = field(default_factory=list)
    final_params: Optional[ParamVector] = None
    model: Optional[ModelSpec] = None


def load_datasets(cfg: ExperimentConfig) -> Tuple[Dataset, Dataset]:
    """Training and held-out datasets for the configured source."""
    if cfg.dataset == "blobs":
        train = generate_blobs(
            cfg.blobs_num_classes, cfg.blobs_per_class, cfg.blobs_feature_dim, cfg.blobs_noise_sigma, cfg.seed
        )
        test = generate_blobs(
            cfg.blobs_num_classes,
            cfg.blobs_test_per_class,
            cfg.blobs_feature_dim,
            cfg.blobs_noise_sigma,
            derive_seed(cfg.seed, "blobs-test"),
        )
        return train, test

    train = load_idx(cfg.idx_train_images, cfg.idx_train_labels, cfg.idx_num_classes)
    if cfg.idx_test_images:
        test = load_idx(cfg.idx_test_images, cfg.idx_test_labels, train.num_classes)
    else:
        logger.warning("No IDX test files configured, evaluating on the training set")
        test = train
    return train, test


def setup_experiment(cfg: ExperimentConfig, workers: Optional[int] = None) -> ExperimentState:
    """Data, shards, model and clients for round 1. Byzantine clients take the highest ids."""
    train, test = load_datasets(cfg)
    partition = make_partition(train, PartitionKind(cfg.partition), cfg.k, cfg.seed, cfg.dirichlet_alpha)
    model = cfg.build_model_spec(train.feature_dim, train.num_classes)
    params = init_params(model)
    dim = model.num_params

    first_byzantine = cfg.k - cfg.k_m
    clients = [
        ClientState.create(
            id=i,
            role=Role.BYZANTINE if i >= first_byzantine else Role.BENIGN,
            dim=dim,
            shard=partition.shards[i],
            experiment_seed=cfg.seed,
        )
        for i in range(cfg.k)
    ]

    attack = cfg.attack_spec()
    flipped = flip_labels(train) if attack.kind == AttackKind.LABELFLIP else None

    logger.info(
        f"Setup: {train.num_samples} train / {test.num_samples} test samples, "
        f"k={cfg.k} (k_m={cfg.k_m}), {model.kind.value} with {dim} params"
    )
    return ExperimentState(
        cfg=cfg,
        model=model,
        train=train,
        test=test,
        partition=partition,
        clients=clients,
        params=params,
        prev_aggregate=zeros(dim),
        attack=attack,
        aggregator=cfg.aggregator_spec(),
        workers=workers if workers is not None else cfg.resolved_workers(),
        flipped=flipped,
    )


def _benign_submissions(state: ExperimentState, global_params: ParamVector) -> List[ParamVector]:
    """Local steps of all benign clients, returned in id order."""
    cfg = state.cfg
    benign = state.benign

    def step(client: ClientState) -> ParamVector:
        return local_step(client, global_params, cfg.beta, cfg.batch_size, state.model, state.train)

    if state.workers <= 1 or len(benign) <= 1:
        return [step(c) for c in benign]

    results: Dict[int, ParamVector] = {}
    with ThreadPoolExecutor(max_workers=state.workers) as executor:
        futures = {executor.submit(step, c): c.id for c in benign}
        for future in as_completed(futures):
            results[futures[future]] = future.result()
    return [results[c.id] for c in benign]


def _fraction(flags: List[bool]) -> float:
    if not flags:
        return 0.0
    return sum(1 for f in flags if f) / len(flags)


def run_round(state: ExperimentState, t: int) -> MetricsRow:
    """Execute round ``t`` and advance the state.

    Raises:
        RoundError: wraps any module error with the round index
    """
    try:
        return _run_round(state, t)
    except RoundError:
        raise
    except Exception as e:
        raise RoundError(t, e) from e


def _run_round(state: ExperimentState, t: int) -> MetricsRow:
    if t != state.round_index + 1:
        raise ValueError(f"Rounds run in order: expected round {state.round_index + 1}, got {t}")
    cfg = state.cfg
    eta = lr_schedule(cfg, t)
    theta = state.params
    prev = state.prev_aggregate

    benign_ms = _benign_submissions(state, theta)
    benign_mean, benign_std = index_stats(benign_ms)

    byzantine = state.byzantine
    knowledge = RoundKnowledge(
        t=t,
        benign_mean=benign_mean,
        benign_std=benign_std,
        prev_aggregate=prev,
        eta=eta,
        k=cfg.k,
        k_m=cfg.k_m,
    )
    ctx = LocalContext(
        global_params=theta,
        beta=cfg.beta,
        batch_size=cfg.batch_size,
        model=state.model,
        train=state.train,
        flipped=state.flipped,
    )
    byz_ms = dispatch(state.attack, knowledge, byzantine, ctx)

    # benign ids precede byzantine ids, so this is id order
    submissions = benign_ms + byz_ms
    outcome = aggregate(state.aggregator, submissions, prev, t, cfg.k_m)
    agg = outcome.aggregate
    state.params = theta - eta * agg

    clipped = outcome.clipped_mask()
    n_benign = len(benign_ms)
    if byz_ms:
        byz_ref = ordered_mean(byz_ms)
        delta = byz_ref - benign_mean
        cos_ref_byz = cosine_similarity(prev, byz_ref)
        byz_gap_norm = norm(byz_ref - prev)
        cos_delta_prev = cosine_similarity(delta, state.prev_delta) if state.prev_delta is not None else 0.0
    else:
        delta = None
        cos_ref_byz = 0.0
        byz_gap_norm = 0.0
        cos_delta_prev = 0.0

    evaluated = t % cfg.eval_every == 0 or t == cfg.rounds
    test_accuracy = test_loss = None
    if evaluated:
        test_accuracy, test_loss = evaluate(state.model, state.params, state.test)

    losses = [c.last_loss for c in state.benign]
    row = MetricsRow(
        round=t,
        eta=eta,
        test_accuracy=test_accuracy,
        test_loss=test_loss,
        train_loss=float(np.mean(losses)),
        clip_fraction_benign=_fraction(clipped[:n_benign]),
        clip_fraction_byz=_fraction(clipped[n_benign:]),
        cos_ref_benign=cosine_similarity(prev, benign_mean),
        cos_ref_byz=cos_ref_byz,
        cos_delta_prev=cos_delta_prev,
        ref_gap_norm=norm(benign_mean - prev),
        byz_gap_norm=byz_gap_norm,
        cos_agg_benign=cosine_similarity(agg, benign_mean),
        agg_norm=norm(agg),
        evaluated=evaluated,
    )

    state.prev_aggregate = agg
    state.prev_delta = delta
    state.round_index = t
    if evaluated:
        logger.info(f"Round {t}: test accuracy {test_accuracy:.4f}, test loss {test_loss:.4f}")
    else:
        logger.debug(f"Round {t}: train loss {row.train_loss:.4f}, |m~|={row.agg_norm:.4f}")
    return row


def train_rounds(
    state: ExperimentState,
    progress: bool = False,
    on_round: Optional[Callable[[MetricsRow], None]] = None,
) -> List[MetricsRow]:
    """Run every remaining configured round in order."""
    rows = []
    start = state.round_index + 1
    for t in tqdm(range(start, state.cfg.rounds + 1), desc="Rounds", disable=not progress):
        row = run_round(state, t)
        rows.append(row)
        if on_round:
            on_round(row)
    return rows


def run_experiment(cfg: ExperimentConfig, workers: Optional[int] = None, progress: bool = False) -> ExperimentResult:
    """Deterministic function of ``cfg``: metrics per round plus the final model."""
    state = setup_experiment(cfg, workers)
    rows = train_rounds(state, progress)
    return ExperimentResult(rows=rows, final_params=state.params, model=state.model)
