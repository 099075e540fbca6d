"""Centroid schemes composing a point sequence into one ball point.

Seven methods, identified by the names used in the results tables:

    emean  Euclidean mean            (x_1 + ... + x_n) / n
    naive  Mobius sum then scale     (x_1 (+) ... (+) x_n) (*) 1/n
    lcf    linear forward centroid   fold of weighted midpoints, left to right
    lcb    linear backward centroid  lcf on the reversed sequence
    lca    linear average centroid   midpoint of lcf and lcb
    fnw    binary tree centroid      divide and conquer weighted midpoints
    bnw    fnw on the reversed sequence

A sequence is an (n, d) array of ball points plus an optional vector of
positive weights (uniform when omitted). The naive method ignores weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .gyroball import (
    BallParams,
    DEFAULT_BALL,
    clamp_to_ball,
    midpoint,
    mobius_add,
    mobius_scale,
    weighted_midpoint,
)

__all__ = [
    "CompositionConfig",
    "DEFAULT_COMPOSITION",
    "METHODS",
    "compose",
    "compose_emean",
    "compose_naive",
    "compose_lcf",
    "compose_lcb",
    "compose_lca",
    "compose_fnw",
    "compose_bnw",
    "mobius_sum",
]

METHODS = ("emean", "naive", "lcf", "lcb", "lca", "fnw", "bnw")


@dataclass(frozen=True)
class CompositionConfig:
    """Rescale margin for the naive method's boundary overflow, plus ball params."""

    overflow_eps: float = 1e-5
    ball: BallParams = field(default_factory=BallParams)

    def __post_init__(self):
        if not (0 < self.overflow_eps <= 1e-3):
            raise ValueError(
                f"overflow_eps must lie in (0, 1e-3], got {self.overflow_eps}"
            )


DEFAULT_COMPOSITION = CompositionConfig()


def _as_sequence(points, weights):
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[None, :]
    if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
        raise ValueError(f"point sequence must be a non-empty (n, d) array, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("point sequence contains non-finite coordinates")
    if weights is None:
        w = np.ones(pts.shape[0])
    else:
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (pts.shape[0],):
            raise ValueError(f"weights shape {w.shape} does not match {pts.shape[0]} points")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise ValueError("weights must be positive and finite")
    return pts, w


def compose_emean(points, weights=None) -> np.ndarray:
    """Weighted arithmetic mean of the coordinates.

    Each coordinate is summed with ``math.fsum`` so the result is exactly
    permutation-invariant; convexity keeps it inside the ball.
    """
    pts, w = _as_sequence(points, weights)
    if pts.shape[0] == 1:
        return pts[0].copy()
    contrib = pts * w[:, None]
    total = math.fsum(w)
    return np.array([math.fsum(contrib[:, j]) for j in range(pts.shape[1])]) / total


def mobius_sum(points, cfg: CompositionConfig = DEFAULT_COMPOSITION):
    """Left-folded Mobius sum with the boundary-overflow rescale.

    Whenever the running sum's norm reaches the numerical boundary
    ``1 - boundary_eps`` (in units of s), it is pulled back by the factor
    ``1 - overflow_eps``. Returns ``(sum, overflow_count)`` where the count
    records how many times the rescale fired.
    """
    pts, _ = _as_sequence(points, None)
    ball = cfg.ball
    limit = ball.s * (1.0 - ball.boundary_eps)
    acc = pts[0].copy()
    overflows = 0
    if float(np.linalg.norm(acc)) >= limit:
        acc = acc * (1.0 - cfg.overflow_eps)
        overflows += 1
    for i in range(1, pts.shape[0]):
        acc = mobius_add(acc, pts[i], ball)
        if float(np.linalg.norm(acc)) >= limit:
            acc = acc * (1.0 - cfg.overflow_eps)
            overflows += 1
    return acc, overflows


def compose_naive(points, weights=None, cfg: CompositionConfig = DEFAULT_COMPOSITION) -> np.ndarray:
    """Mobius sum of the sequence scaled by 1/n: (x_1 (+) ... (+) x_n) (*) 1/n.

    The sum folds left to right. Weights are accepted for interface
    uniformity but ignored; the scheme is defined unweighted.
    """
    pts, _ = _as_sequence(points, weights)
    n = pts.shape[0]
    if n == 1:
        return pts[0].copy()
    acc, _ = mobius_sum(pts, cfg)
    return mobius_scale(1.0 / n, acc, cfg.ball)


def compose_lcf(points, weights=None, params: BallParams = DEFAULT_BALL) -> np.ndarray:
    """Linear forward centroid.

    Folds the sequence left to right: the running centroid (carrying the
    accumulated weight m_1 + ... + m_k) is weighted-midpointed with the
    next point at t = m_{k+1} / (m_1 + ... + m_{k+1}).
    """
    pts, w = _as_sequence(points, weights)
    acc = pts[0].copy()
    acc_w = float(w[0])
    for i in range(1, pts.shape[0]):
        acc = weighted_midpoint(acc, pts[i], acc_w, float(w[i]), params)
        acc_w += float(w[i])
    return acc


def compose_lcb(points, weights=None, params: BallParams = DEFAULT_BALL) -> np.ndarray:
    """Linear backward centroid: the forward fold applied to the reversed sequence."""
    pts, w = _as_sequence(points, weights)
    return compose_lcf(pts[::-1], w[::-1], params)


def compose_lca(points, weights=None, params: BallParams = DEFAULT_BALL) -> np.ndarray:
    """Linear average centroid: unweighted midpoint of the forward and backward centroids."""
    pts, w = _as_sequence(points, weights)
    if pts.shape[0] == 1:
        return pts[0].copy()
    return midpoint(compose_lcf(pts, w, params), compose_lcb(pts, w, params), params)


def _btc(pts: np.ndarray, w: np.ndarray, params: BallParams) -> np.ndarray:
    n = pts.shape[0]
    if n == 1:
        return pts[0].copy()
    if n == 2:
        return weighted_midpoint(pts[0], pts[1], float(w[0]), float(w[1]), params)
    half = n // 2
    left = _btc(pts[:half], w[:half], params)
    right = _btc(pts[half:], w[half:], params)
    return weighted_midpoint(left, right, float(np.sum(w[:half])), float(np.sum(w[half:])), params)


def compose_fnw(points, weights=None, params: BallParams = DEFAULT_BALL) -> np.ndarray:
    """Binary tree centroid.

    Splits the sequence at floor(n/2), recurses on both halves, then takes
    the weighted midpoint of the two partial centroids with the halves'
    total weights. Logarithmic depth instead of the linear folds above.
    """
    pts, w = _as_sequence(points, weights)
    return _btc(pts, w, params)


def compose_bnw(points, weights=None, params: BallParams = DEFAULT_BALL) -> np.ndarray:
    """Binary tree centroid applied to the reversed sequence."""
    pts, w = _as_sequence(points, weights)
    return compose_fnw(pts[::-1], w[::-1], params)


def compose(
    method: str,
    points,
    weights=None,
    cfg: CompositionConfig = DEFAULT_COMPOSITION,
) -> np.ndarray:
    """Dispatch to one of the seven composition methods by table name."""
    if method == "emean":
        # convex combination: stays inside any ball containing the inputs,
        # and must pass through unclamped for unconstrained Euclidean vectors
        return compose_emean(points, weights)
    if method == "naive":
        out = compose_naive(points, weights, cfg)
    elif method == "lcf":
        out = compose_lcf(points, weights, cfg.ball)
    elif method == "lcb":
        out = compose_lcb(points, weights, cfg.ball)
    elif method == "lca":
        out = compose_lca(points, weights, cfg.ball)
    elif method == "fnw":
        out = compose_fnw(points, weights, cfg.ball)
    elif method == "bnw":
        out = compose_bnw(points, weights, cfg.ball)
    else:
        raise ValueError(f"unknown composition method {method!r}; expected one of {METHODS}")
    return clamp_to_ball(out, cfg.ball)
