import math

import numpy as np
import pytest

from gyrotext.composition import (
    METHODS,
    CompositionConfig,
    compose,
    compose_bnw,
    compose_emean,
    compose_fnw,
    compose_lca,
    compose_lcb,
    compose_lcf,
    compose_naive,
    mobius_sum,
)
from gyrotext.gyroball import midpoint, mobius_add, weighted_midpoint


def random_points(rng, n, dim, max_norm=0.8):
    u = rng.normal(size=(n, dim))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    return u * rng.uniform(0.0, max_norm, size=(n, 1))


def test_emean_examples():
    x = np.array([0.3, -0.2])
    assert np.array_equal(compose_emean(x[None, :]), x)
    np.testing.assert_allclose(
        compose_emean(np.array([[0.4, 0.0], [-0.4, 0.0]])), 0.0, atol=0
    )
    np.testing.assert_allclose(
        compose_emean(np.array([[0.2, 0.0], [0.4, 0.0], [0.6, 0.0]])), [0.4, 0.0]
    )


def test_emean_weighted():
    pts = np.array([[0.6, 0.0], [0.0, 0.6]])
    np.testing.assert_allclose(
        compose_emean(pts, weights=[3.0, 1.0]), [0.45, 0.15], atol=1e-15
    )


def test_emean_exact_permutation_invariance():
    rng = np.random.default_rng(0)
    pts = random_points(rng, 40, 6)
    base = compose_emean(pts)
    for _ in range(20):
        perm = rng.permutation(40)
        assert np.array_equal(compose_emean(pts[perm]), base)


def test_naive_examples():
    x = np.array([0.3, 0.1])
    assert np.array_equal(compose_naive(x[None, :]), x)
    pts = np.stack([x, -x])
    np.testing.assert_allclose(compose_naive(pts), 0.0, atol=1e-15)
    # (0.5 (+) 0.5) = 0.8, then tanh(0.5 artanh 0.8) = 0.5
    got = compose_naive(np.array([[0.5, 0.0], [0.5, 0.0]]))
    np.testing.assert_allclose(got, [0.5, 0.0], atol=1e-14)


def test_naive_ignores_weights():
    rng = np.random.default_rng(1)
    pts = random_points(rng, 5, 3)
    w = rng.uniform(0.5, 2.0, 5)
    assert np.array_equal(compose_naive(pts, weights=w), compose_naive(pts))


def test_mobius_sum_overflow_rescale():
    # near-boundary collinear points blow the fold onto the boundary
    pts = np.tile(np.array([0.999, 0.0]), (50, 1))
    acc, overflows = mobius_sum(pts)
    assert overflows > 0
    assert np.linalg.norm(acc) < 1.0
    interior, none_fired = mobius_sum(np.array([[0.1, 0.0], [0.2, 0.0]]))
    assert none_fired == 0
    assert interior[0] == pytest.approx(0.3 / 1.02, abs=1e-15)


def test_lcf_examples():
    rng = np.random.default_rng(2)
    a, b, c = random_points(rng, 3, 3)
    assert np.array_equal(compose_lcf(a[None, :]), a)
    np.testing.assert_allclose(compose_lcf(np.stack([a, b])), midpoint(a, b), atol=0)
    expect = weighted_midpoint(midpoint(a, b), c, 2.0, 1.0)
    np.testing.assert_allclose(compose_lcf(np.stack([a, b, c])), expect, atol=0)


def test_lcb_examples():
    rng = np.random.default_rng(3)
    a, b = random_points(rng, 2, 3)
    np.testing.assert_allclose(compose_lcb(np.stack([a, b])), midpoint(b, a), atol=0)
    seq = random_points(rng, 5, 3)
    assert np.linalg.norm(compose_lcf(seq) - compose_lcb(seq)) > 1e-6


def test_reversal_duality_bit_for_bit():
    rng = np.random.default_rng(4)
    for n in (2, 3, 7, 12):
        seq = random_points(rng, n, 4)
        w = rng.uniform(0.5, 2.0, n)
        assert np.array_equal(compose_lcb(seq, w), compose_lcf(seq[::-1], w[::-1]))
        assert np.array_equal(compose_bnw(seq, w), compose_fnw(seq[::-1], w[::-1]))


def test_lca_examples():
    rng = np.random.default_rng(5)
    a, b = random_points(rng, 2, 3)
    np.testing.assert_allclose(compose_lca(np.stack([a, b])), midpoint(a, b), atol=1e-12)
    # palindrome: forward and backward folds coincide exactly
    pal = np.stack([a, b, a])
    assert np.array_equal(compose_lcf(pal), compose_lcb(pal))
    np.testing.assert_allclose(compose_lca(pal), compose_lcf(pal), atol=1e-12)


def test_fnw_examples():
    rng = np.random.default_rng(6)
    a, b, c, d = random_points(rng, 4, 3)
    np.testing.assert_allclose(compose_fnw(np.stack([a, b])), midpoint(a, b), atol=0)
    np.testing.assert_allclose(
        compose_fnw(np.stack([a, b, c, d])),
        midpoint(midpoint(a, b), midpoint(c, d)),
        atol=0,
    )
    # split at floor(3/2)=1: singleton left half against the (b,c) midpoint
    np.testing.assert_allclose(
        compose_fnw(np.stack([a, b, c])),
        weighted_midpoint(a, midpoint(b, c), 1.0, 2.0),
        atol=0,
    )


def test_bnw_examples():
    rng = np.random.default_rng(7)
    a, b, c, d = random_points(rng, 4, 3)
    np.testing.assert_allclose(
        compose_bnw(np.stack([a, b, c])),
        weighted_midpoint(c, midpoint(b, a), 1.0, 2.0),
        atol=0,
    )
    assert np.array_equal(
        compose_bnw(np.stack([a, b, c, d])), compose_fnw(np.stack([d, c, b, a]))
    )


def test_fnw_equals_lcf_for_pairs():
    rng = np.random.default_rng(8)
    pair = random_points(rng, 2, 5)
    assert np.array_equal(compose_fnw(pair), compose_lcf(pair))


def test_single_point_fixed_point_exact():
    rng = np.random.default_rng(9)
    x = random_points(rng, 1, 4)
    for method in METHODS:
        assert np.array_equal(compose(method, x), x[0]), method


def test_constant_sequence_fixed_point():
    rng = np.random.default_rng(10)
    x = random_points(rng, 1, 3)[0]
    seq = np.tile(x, (9, 1))
    for method in METHODS:
        np.testing.assert_allclose(compose(method, seq), x, atol=1e-9, err_msg=method)


def test_order_sensitivity_of_folds():
    rng = np.random.default_rng(11)
    seq = random_points(rng, 6, 3)
    perm = seq[[3, 1, 5, 0, 2, 4]]
    for fn in (compose_lcf, compose_lcb, compose_fnw, compose_bnw):
        assert np.linalg.norm(fn(seq) - fn(perm)) > 1e-6


def test_gyrotranslation_equivariance():
    rng = np.random.default_rng(12)
    seq = random_points(rng, 7, 4, max_norm=0.7)
    g = random_points(rng, 1, 4, max_norm=0.5)[0]
    shifted = np.stack([mobius_add(g, p) for p in seq])
    for method in ("lcf", "lcb", "lca", "fnw", "bnw"):
        expect = mobius_add(g, compose(method, seq))
        np.testing.assert_allclose(compose(method, shifted), expect, atol=1e-7, err_msg=method)


def test_rotation_equivariance_all_methods():
    rng = np.random.default_rng(13)
    seq = random_points(rng, 8, 5)
    Q, _ = np.linalg.qr(rng.normal(size=(5, 5)))
    for method in METHODS:
        expect = Q @ compose(method, seq)
        np.testing.assert_allclose(compose(method, seq @ Q.T), expect, atol=1e-9, err_msg=method)


def test_outputs_inside_ball():
    rng = np.random.default_rng(14)
    seq = random_points(rng, 30, 3, max_norm=0.98)
    for method in METHODS:
        assert np.linalg.norm(compose(method, seq)) < 1.0, method


def test_dispatch_and_validation():
    rng = np.random.default_rng(15)
    seq = random_points(rng, 4, 3)
    assert np.array_equal(compose("fnw", seq), compose_fnw(seq))
    with pytest.raises(ValueError):
        compose("frechet", seq)
    with pytest.raises(ValueError):
        compose_emean(np.empty((0, 3)))
    with pytest.raises(ValueError):
        compose_lcf(seq, weights=[1.0, 2.0])
    with pytest.raises(ValueError):
        compose_lcf(seq, weights=[1.0, 2.0, -1.0, 1.0])
    with pytest.raises(ValueError):
        compose_emean(np.array([[np.nan, 0.0]]))


def test_composition_config_validation():
    CompositionConfig(overflow_eps=1e-4)
    with pytest.raises(ValueError):
        CompositionConfig(overflow_eps=0.0)
    with pytest.raises(ValueError):
        CompositionConfig(overflow_eps=0.01)


def test_weighted_fold_accumulates_weights():
    # three points with weights (2, 1, 1): the fold must carry 2, then 3
    rng = np.random.default_rng(16)
    a, b, c = random_points(rng, 3, 3)
    got = compose_lcf(np.stack([a, b, c]), weights=[2.0, 1.0, 1.0])
    expect = weighted_midpoint(weighted_midpoint(a, b, 2.0, 1.0), c, 3.0, 1.0)
    np.testing.assert_allclose(got, expect, atol=0)
