import numpy as np
import pytest

from byzsim.errors import DegenerateTarget, DimensionMismatch
from byzsim.vecmath import (
    as_param_vector,
    cosine_similarity,
    index_stats,
    inner,
    norm,
    ordered_mean,
    orthogonal_rejection,
)


def v(*xs):
    return as_param_vector(xs)


@pytest.mark.parametrize("a, b, expected", [
    ((1, 0), (0, 1), 0.0),
    ((1, 1), (1, 1), 2.0),
    ((3, 4), (4, 3), 24.0),
])
def test_inner_examples(a, b, expected):
    assert inner(v(*a), v(*b)) == expected


def test_inner_rejects_mismatched_dims():
    with pytest.raises(DimensionMismatch):
        inner(v(1, 2), v(1, 2, 3))


def test_inner_symmetric_and_bilinear(rng):
    for _ in range(50):
        a, b, c = (rng.normal(size=7) for _ in range(3))
        s = float(rng.normal())
        assert inner(a, b) == pytest.approx(inner(b, a), rel=1e-9)
        assert inner(s * a + c, b) == pytest.approx(s * inner(a, b) + inner(c, b), rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("a, b, expected", [
    ((1, 0), (0, 1), 0.0),
    ((1, 1), (2, 2), 1.0),
    ((3, 4), (4, 3), 0.96),
])
def test_cosine_examples(a, b, expected):
    assert cosine_similarity(v(*a), v(*b)) == pytest.approx(expected, abs=1e-12)


def test_cosine_of_zero_vector_is_zero():
    assert cosine_similarity(v(0, 0), v(1, 2)) == 0.0
    assert cosine_similarity(v(1e-13, 0), v(1, 2)) == 0.0


def test_cosine_bounded_and_scale_invariant(rng):
    for _ in range(100):
        a, b = rng.normal(size=5), rng.normal(size=5)
        c = cosine_similarity(a, b)
        assert -1 - 1e-9 <= c <= 1 + 1e-9
        assert cosine_similarity(3.7 * a, 0.2 * b) == pytest.approx(c, abs=1e-12)


@pytest.mark.parametrize("p, m, proj, rej", [
    ((1, 1), (1, 0), (1, 0), (0, 1)),
    ((2, 3), (0, 5), (0, 3), (2, 0)),
    ((0, 1), (1, 0), (0, 0), (0, 1)),
])
def test_orthogonal_rejection_examples(p, m, proj, rej):
    got_proj, got_rej = orthogonal_rejection(v(*p), v(*m))
    np.testing.assert_allclose(got_proj, proj, atol=1e-15)
    np.testing.assert_allclose(got_rej, rej, atol=1e-15)


def test_orthogonal_rejection_degenerate_target():
    with pytest.raises(DegenerateTarget):
        orthogonal_rejection(v(1, 1), v(0, 0))


def test_orthogonal_rejection_properties(rng):
    for _ in range(200):
        p, m = rng.normal(size=6), rng.normal(size=6)
        proj, rej = orthogonal_rejection(p, m)
        np.testing.assert_allclose(proj + rej, p, rtol=0, atol=1e-12)
        assert abs(inner(rej, m)) <= 1e-9 * norm(p) * norm(m)


def test_index_stats_examples():
    mean, std = index_stats([v(1, 2), v(3, 4)])
    np.testing.assert_array_equal(mean, [2, 3])
    np.testing.assert_array_equal(std, [1, 1])

    mean, std = index_stats([v(5, 5)])
    np.testing.assert_array_equal(mean, [5, 5])
    np.testing.assert_array_equal(std, [0, 0])


def test_index_stats_matches_naive_oracle(rng):
    for _ in range(50):
        n, d = int(rng.integers(1, 11)), int(rng.integers(1, 9))
        vs = [rng.normal(size=d) for _ in range(n)]
        mean, std = index_stats(vs)
        for j in range(d):
            col = [x[j] for x in vs]
            mu = sum(col) / n
            sigma = (sum((c - mu) ** 2 for c in col) / n) ** 0.5
            assert mean[j] == pytest.approx(mu, abs=1e-12)
            assert std[j] == pytest.approx(sigma, abs=1e-12)


def test_index_stats_rejects_empty_set():
    with pytest.raises(ValueError):
        index_stats([])


def test_param_vector_rejects_nonfinite_and_empty():
    with pytest.raises(ValueError):
        as_param_vector([1.0, np.nan])
    with pytest.raises(ValueError):
        as_param_vector([])


def test_ordered_mean_accumulates_in_order():
    vs = [v(0.1, 1.0), v(0.2, 2.0), v(0.3, 3.0)]
    expected = ((0.0 + 0.1 + 0.2) + 0.3) / 3
    assert ordered_mean(vs)[0] == expected


def _ascending_sum(values):
    total = 0.0
    for x in values:
        total += float(x)
    return total


def test_inner_and_norm_sum_in_index_order(rng):
    for _ in range(50):
        a, b = rng.normal(size=1000), rng.normal(size=1000)
        assert inner(a, b) == _ascending_sum(a * b)
        assert norm(a) == float(np.sqrt(_ascending_sum(a * a)))
