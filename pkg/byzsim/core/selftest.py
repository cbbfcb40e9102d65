"""
Quick oracle checks that run without pytest
"""
import logging
import math
from typing import Callable, List, Tuple

import numpy as np

from ..aggregators import cc_agg, cc_clip, mean_agg, rfa_agg, trimmed_mean_agg
from ..attacks import RoundKnowledge, alie_zmax, ipm, normal_cdf
from ..data import Dataset
from ..model import ModelKind, ModelSpec, forward_loss, init_params, loss_and_gradient
from ..seeding import make_rng
from ..utils import log_section
from ..vecmath import as_param_vector, norm, zeros

logger = logging.getLogger(__name__)

Check = Tuple[str, Callable[[], bool]]


def _bisect_quantile(q: float) -> float:
    lo, hi = -10.0, 10.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if normal_cdf(mid) < q:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def check_trimmed_mean_oracle() -> bool:
    rng = make_rng(0, "selftest", "tm")
    for _ in range(200):
        k = int(rng.integers(1, 10))
        d = int(rng.integers(1, 6))
        trim = int(rng.integers(0, (k - 1) // 2 + 1))
        ms = [rng.normal(size=d) for _ in range(k)]
        got = trimmed_mean_agg(ms, trim).aggregate
        for j in range(d):
            middle = sorted(m[j] for m in ms)[trim:k - trim]
            if got[j] != sum(middle) / len(middle):
                return False
    return True


def check_geometric_median() -> bool:
    triangle = [as_param_vector(p) for p in ([0, 0], [1, 0], [0, 1])]
    fermat = 0.5 - math.sqrt(3) / 6
    x = rfa_agg(triangle).aggregate
    if not np.allclose(x, [fermat, fermat], atol=1e-4):
        return False
    line = [as_param_vector([v]) for v in (0.0, 1.0, 10.0)]
    if abs(rfa_agg(line).aggregate[0] - 1.0) > 1e-4:
        return False
    rng = make_rng(0, "selftest", "rfa")
    for _ in range(100):
        ms = [rng.normal(size=3) for _ in range(int(rng.integers(2, 8)))]
        trace = rfa_agg(ms).objective_trace
        if any(b > a + 1e-9 for a, b in zip(trace, trace[1:])):
            return False
    return True


def check_alie_zmax() -> bool:
    return (
        abs(alie_zmax(25, 5) - _bisect_quantile(0.6)) <= 1e-3
        and abs(alie_zmax(10, 4) - 0.43073) <= 1e-3
    )


def check_cc_containment() -> bool:
    rng = make_rng(0, "selftest", "cc")
    for _ in range(1000):
        d = int(rng.integers(1, 6))
        center = rng.normal(size=d) * 3
        m = rng.normal(size=d) * 3
        tau = float(rng.uniform(0.01, 5))
        out, delta = cc_clip(m, center, tau)
        if norm(out - center) > tau + 1e-9:
            return False
        # same gap norm, different direction
        gap = m - center
        turned = center + norm(gap) * rng.permutation(np.eye(d))[0]
        if abs(cc_clip(turned, center, tau)[1] - delta) > 1e-12:
            return False
    return True


def check_cc_reduces_to_mean() -> bool:
    rng = make_rng(0, "selftest", "cc-mean")
    ms = [rng.normal(size=4) for _ in range(7)]
    return np.array_equal(cc_agg(ms, zeros(4), 1e12).aggregate, mean_agg(ms).aggregate)


def check_ipm_identity() -> bool:
    m_bar = as_param_vector([0.3, -1.2, 2.0])
    k, k_m = 25, 5
    kn = RoundKnowledge(t=1, benign_mean=m_bar, benign_std=zeros(3), prev_aggregate=zeros(3), eta=0.1, k=k, k_m=k_m)
    ms = [m_bar.copy() for _ in range(k - k_m)] + [ipm(kn, 0.2) for _ in range(k_m)]
    return bool(np.all(np.abs(mean_agg(ms).aggregate - 0.76 * m_bar) <= 1e-12))


def check_gradients() -> bool:
    rng = make_rng(0, "selftest", "grad")
    for trial in range(20):
        kind = ModelKind.LOGREG if trial % 2 == 0 else ModelKind.MLP
        f, c = int(rng.integers(2, 6)), int(rng.integers(2, 5))
        spec = ModelSpec(kind=kind, feature_dim=f, num_classes=c, hidden=4 if kind == ModelKind.MLP else 0, init_seed=trial)
        ds = Dataset(features=rng.normal(size=(12, f)), labels=rng.integers(0, c, size=12), num_classes=c)
        batch = list(range(12))
        params = init_params(spec) + rng.normal(size=spec.num_params) * 0.3
        _, grad = loss_and_gradient(spec, params, ds, batch)
        h = 1e-6
        numeric = np.zeros_like(params)
        for i in range(params.size):
            e = np.zeros_like(params)
            e[i] = h
            numeric[i] = (forward_loss(spec, params + e, ds, batch) - forward_loss(spec, params - e, ds, batch)) / (2 * h)
        scale = max(1.0, float(np.max(np.abs(numeric))))
        if float(np.max(np.abs(grad - numeric))) / scale > 1e-4:
            return False
    return True


CHECKS: List[Check] = [
    ("trimmed mean matches sort-slice-mean", check_trimmed_mean_oracle),
    ("geometric median oracles and monotone objective", check_geometric_median),
    ("ALIE z_max matches bisection quantile", check_alie_zmax),
    ("CC containment and angular invariance", check_cc_containment),
    ("CC with huge radius equals the mean", check_cc_reduces_to_mean),
    ("IPM aggregate is 0.76 of the benign mean", check_ipm_identity),
    ("analytic gradients match finite differences", check_gradients),
]


def run_selftest(checks: List[Check] = None) -> int:
    """Run the oracle checks; returns the number of failures."""
    log_section("SELFTEST")
    failures = 0
    for name, check in checks or CHECKS:
        try:
            ok = check()
        except Exception as e:
            logger.error(f"{name}: {e}", exc_info=True)
            ok = False
        icon = "✓" if ok else "✗"
        logger.info(f"  [{icon}] {name}")
        if not ok:
            failures += 1
    logger.info(f"{len(checks or CHECKS) - failures}/{len(checks or CHECKS)} checks passed")
    return failures
