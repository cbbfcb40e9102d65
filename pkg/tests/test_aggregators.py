import math

import numpy as np
import pytest

from byzsim.aggregators import (
    AggregatorKind,
    AggregatorSpec,
    BucketOrder,
    aggregate,
    cc_agg,
    cc_clip,
    cosine_order,
    form_buckets,
    mean_agg,
    rfa_agg,
    scc_agg,
    split_clusters,
    trimmed_mean_agg,
)
from byzsim.seeding import derive_seed, make_rng
from byzsim.vecmath import as_param_vector, norm, ordered_mean, zeros


def vs(*rows):
    return [as_param_vector(r) for r in rows]


# Mean

def test_mean_examples():
    np.testing.assert_array_equal(mean_agg(vs((0, 0), (2, 2))).aggregate, [1, 1])
    np.testing.assert_allclose(mean_agg(vs((1, 0), (0, 1), (-1, -1))).aggregate, [0, 0], atol=1e-15)
    v = as_param_vector([0.1, -3.3])
    np.testing.assert_allclose(mean_agg([v] * 5).aggregate, v, rtol=1e-14)


def test_mean_rejects_empty():
    with pytest.raises(ValueError):
        mean_agg([])


# Centred clipping

def test_cc_clip_example():
    out, delta = cc_clip(as_param_vector([3, 4]), zeros(2), 1.0)
    np.testing.assert_allclose(out, [0.6, 0.8])
    assert delta == pytest.approx(0.2)


def test_cc_clip_inside_radius_is_identity():
    m = as_param_vector([0.3, 0.4])
    out, delta = cc_clip(m, zeros(2), 1.0)
    np.testing.assert_array_equal(out, m)
    assert delta == 1.0


def test_cc_clip_at_center():
    c = as_param_vector([2, -1])
    out, delta = cc_clip(c.copy(), c, 0.5)
    np.testing.assert_array_equal(out, c)
    assert delta == 1.0


def test_cc_clip_containment_and_segment(rng):
    for _ in range(1000):
        d = int(rng.integers(1, 6))
        center, m = rng.normal(size=d) * 3, rng.normal(size=d) * 3
        tau = float(rng.uniform(0.01, 5))
        out, delta = cc_clip(m, center, tau)
        assert norm(out - center) <= tau + 1e-9
        assert 0 < delta <= 1
        np.testing.assert_allclose(out, center + delta * (m - center), atol=1e-12)


def test_cc_clip_factor_depends_only_on_gap_norm(rng):
    for _ in range(200):
        center = rng.normal(size=4)
        gap = rng.normal(size=4)
        rotated = rng.permutation(gap) * np.sign(rng.normal(size=4))
        tau = float(rng.uniform(0.1, 3))
        assert cc_clip(center + gap, center, tau)[1] == pytest.approx(cc_clip(center + rotated, center, tau)[1], rel=1e-12)


def test_cc_agg_example():
    outcome = cc_agg(vs((0, 0), (0, 0), (3, 4)), zeros(2), tau=1.0, l=1)
    np.testing.assert_allclose(outcome.aggregate, [0.2, 0.26667], atol=1e-4)
    assert outcome.per_client_clip_factor[:2] == (1.0, 1.0)
    assert outcome.per_client_clip_factor[2] == pytest.approx(0.2)
    assert outcome.clipped_mask() == [False, False, True]


def test_cc_agg_inside_radius_is_plain_mean(rng):
    ms = [rng.uniform(-0.1, 0.1, size=3) for _ in range(6)]
    np.testing.assert_array_equal(cc_agg(ms, zeros(3), 1.0).aggregate, mean_agg(ms).aggregate)


def test_cc_agg_huge_radius_equals_mean_bitwise(rng):
    ms = [rng.normal(size=5) * 10 for _ in range(9)]
    np.testing.assert_array_equal(cc_agg(ms, rng.normal(size=5), 1e12).aggregate, mean_agg(ms).aggregate)


def test_cc_agg_stays_within_radius_of_center(rng):
    for _ in range(100):
        ms = [rng.normal(size=3) * 5 for _ in range(7)]
        prev = rng.normal(size=3)
        tau = float(rng.uniform(0.1, 2))
        assert norm(cc_agg(ms, prev, tau, 1).aggregate - prev) <= tau + 1e-9


def test_cc_agg_iterations_pull_toward_majority():
    ms = vs((0, 0), (0, 0), (0, 0), (0, 0), (100, 0))
    one = cc_agg(ms, as_param_vector([5, 0]), 1.0, l=1).aggregate
    three = cc_agg(ms, as_param_vector([5, 0]), 1.0, l=3).aggregate
    assert norm(three) < norm(one)


def test_cc_agg_rejects_zero_iterations():
    with pytest.raises(ValueError):
        cc_agg(vs((1, 1)), zeros(2), 1.0, l=0)


# Trimmed mean

def test_trimmed_mean_example():
    ms = vs((1,), (2,), (3,), (4,), (100,))
    assert trimmed_mean_agg(ms, 1).aggregate[0] == 3.0


def test_trimmed_mean_without_trim_is_mean(rng):
    ms = [rng.normal(size=4) for _ in range(6)]
    np.testing.assert_allclose(trimmed_mean_agg(ms, 0).aggregate, mean_agg(ms).aggregate, rtol=1e-14, atol=1e-15)


def test_trimmed_mean_identical_clients():
    v = as_param_vector([0.1, 7.0, -2.5])
    for trim in range(3):
        np.testing.assert_allclose(trimmed_mean_agg([v] * 5, trim).aggregate, v, rtol=1e-14)


def test_trimmed_mean_matches_brute_force_oracle(rng):
    for _ in range(200):
        k, d = int(rng.integers(1, 10)), int(rng.integers(1, 6))
        trim = int(rng.integers(0, (k - 1) // 2 + 1))
        ms = [rng.normal(size=d) for _ in range(k)]
        got = trimmed_mean_agg(ms, trim).aggregate
        for j in range(d):
            middle = sorted(m[j] for m in ms)[trim:k - trim]
            assert got[j] == sum(middle) / len(middle)


def test_trimmed_mean_rejects_large_trim():
    with pytest.raises(ValueError):
        trimmed_mean_agg(vs((1,), (2,), (3,), (4,)), 2)


# RFA

def test_rfa_identical_points():
    v = as_param_vector([1.5, -2.0])
    outcome = rfa_agg([v] * 4)
    np.testing.assert_allclose(outcome.aggregate, v, rtol=1e-14)
    assert outcome.iterations == 1


def test_rfa_one_dimensional_median():
    assert rfa_agg(vs((0,), (1,), (10,))).aggregate[0] == pytest.approx(1.0, abs=1e-4)


def test_rfa_fermat_point_of_triangle():
    fermat = 0.5 - math.sqrt(3) / 6
    np.testing.assert_allclose(rfa_agg(vs((0, 0), (1, 0), (0, 1))).aggregate, [fermat, fermat], atol=1e-4)
    assert fermat == pytest.approx(0.21132, abs=1e-5)


def test_rfa_objective_is_monotone(rng):
    for _ in range(100):
        ms = [rng.normal(size=3) for _ in range(int(rng.integers(2, 9)))]
        trace = rfa_agg(ms).objective_trace
        assert len(trace) >= 2
        for before, after in zip(trace, trace[1:]):
            assert after <= before + 1e-9


def test_rfa_resists_one_outlier():
    ms = vs((0, 0), (0.1, 0), (0, 0.1), (0.1, 0.1), (1000, 1000))
    assert norm(rfa_agg(ms).aggregate) < 1.0


# Sequential centred clipping

def test_scc_bucket_arithmetic():
    clusters = split_clusters(list(range(6)), 3)
    assert [len(c) for c in clusters] == [2, 2, 2]
    buckets = form_buckets(clusters, make_rng(0, "test"))
    assert [len(b) for b in buckets] == [3, 3]
    assert sorted(i for b in buckets for i in b) == list(range(6))
    for bucket in buckets:
        assert sorted(c for c, cluster in enumerate(clusters) for i in bucket if i in cluster) == [0, 1, 2]


def test_scc_uneven_clusters():
    clusters = split_clusters(list(range(7)), 3)
    assert [len(c) for c in clusters] == [3, 2, 2]
    buckets = form_buckets(clusters, make_rng(1, "test"))
    assert [len(b) for b in buckets] == [3, 3, 1]


def test_scc_with_n_equal_k_is_one_clip_of_the_mean(rng):
    ms = [rng.normal(size=4) for _ in range(5)]
    prev = rng.normal(size=4)
    outcome = scc_agg(ms, prev, 0.5, n=5, seed=3)
    expected, delta = cc_clip(ordered_mean(ms), prev, 0.5)
    np.testing.assert_array_equal(outcome.aggregate, expected)
    assert outcome.per_client_clip_factor == (delta,) * 5


def test_scc_fixed_point_at_prev(rng):
    prev = rng.normal(size=3)
    for n in (1, 2, 4):
        for seed in (0, 9):
            outcome = scc_agg([prev.copy() for _ in range(4)], prev, 0.3, n=n, seed=seed)
            np.testing.assert_allclose(outcome.aggregate, prev, rtol=1e-14)


def test_scc_deterministic_for_fixed_seed(rng):
    ms = [rng.normal(size=3) for _ in range(9)]
    prev = rng.normal(size=3)
    a = scc_agg(ms, prev, 0.2, n=3, seed=17)
    b = scc_agg(ms, prev, 0.2, n=3, seed=17)
    np.testing.assert_array_equal(a.aggregate, b.aggregate)
    assert a.per_client_clip_factor == b.per_client_clip_factor


def test_scc_members_share_bucket_factor(rng):
    ms = [rng.normal(size=3) * 4 for _ in range(6)]
    outcome = scc_agg(ms, zeros(3) + 0.1, 0.5, n=3, seed=2)
    assert len(set(outcome.per_client_clip_factor)) <= 2


def test_scc_result_within_radius_of_each_step(rng):
    ms = [rng.normal(size=3) * 4 for _ in range(9)]
    prev = rng.normal(size=3)
    outcome = scc_agg(ms, prev, 0.5, n=3, seed=2)
    assert norm(outcome.aggregate - prev) <= 3 * 0.5 + 1e-9


def test_scc_random_order_variant_runs(rng):
    ms = [rng.normal(size=3) for _ in range(6)]
    outcome = scc_agg(ms, zeros(3), 1.0, n=2, seed=5, order=BucketOrder.RANDOM)
    assert outcome.aggregate.shape == (3,)
    assert outcome.iterations == 3


def test_cosine_order_breaks_ties_by_id():
    ms = vs((1, 0), (0, 1), (2, 0), (-1, 0))
    assert cosine_order(ms, as_param_vector([1, 0])) == [0, 2, 1, 3]


def test_scc_rejects_bad_n():
    with pytest.raises(ValueError):
        scc_agg(vs((1, 0), (0, 1)), zeros(2), 1.0, n=3, seed=0)


# Routing and specs

def test_aggregate_routes_every_kind(rng):
    ms = [rng.normal(size=3) for _ in range(7)]
    prev = rng.normal(size=3)
    np.testing.assert_array_equal(aggregate(AggregatorSpec(kind="mean"), ms, prev, 1, 2).aggregate, mean_agg(ms).aggregate)
    np.testing.assert_array_equal(
        aggregate(AggregatorSpec(kind="cc", tau=0.3, clip_iters=2), ms, prev, 1, 2).aggregate,
        cc_agg(ms, prev, 0.3, 2).aggregate,
    )
    np.testing.assert_array_equal(
        aggregate(AggregatorSpec(kind="tm"), ms, prev, 1, 2).aggregate, trimmed_mean_agg(ms, 2).aggregate
    )
    np.testing.assert_array_equal(aggregate(AggregatorSpec(kind="rfa"), ms, prev, 1, 2).aggregate, rfa_agg(ms).aggregate)
    spec = AggregatorSpec(kind="scc", tau=0.4, bucket_n=3, seed=8)
    np.testing.assert_array_equal(
        aggregate(spec, ms, prev, 6, 2).aggregate,
        scc_agg(ms, prev, 0.4, 3, derive_seed(8, "scc", 6)).aggregate,
    )


def test_aggregator_spec_validation():
    with pytest.raises(ValueError):
        AggregatorSpec(kind="cc", tau=0.0)
    with pytest.raises(ValueError):
        AggregatorSpec(kind="tm").validate_for(k=4, k_m=2)
    with pytest.raises(ValueError):
        AggregatorSpec(kind="scc", bucket_n=6).validate_for(k=5, k_m=1)
    AggregatorSpec(kind="tm", trim_k=1).validate_for(k=4, k_m=2)
    spec = AggregatorSpec(kind="scc", scc_order="random")
    assert spec.kind == AggregatorKind.SCC
    assert spec.to_dict()["scc_order"] == "random"
