"""Classifiers over ball-point document representations.

Three families, mirroring the experiment grids:

    - metric k-NN with either the hyperbolic ball distance or the
      Euclidean distance, with fully deterministic tie rules;
    - binary soft-margin kernel SVM trained by SMO on a precomputed
      Gram matrix (maximal-violating-pair working set selection);
    - primal linear SVM trained by deterministic-shuffled subgradient
      descent on the squared-hinge objective.

Multiclass problems are reduced one-vs-rest; prediction is the argmax
of the binary decision values with ties going to the smallest class id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .gyroball import pairwise_poincare_distance
from .kernels import GramMatrix, KernelSpec, cross_kernel, gram_matrix

__all__ = [
    "KnnModel",
    "SvmModel",
    "LinearSvmModel",
    "SmoConfig",
    "LinearPrimalConfig",
    "OvrModel",
    "knn_fit",
    "knn_predict",
    "knn_predict_batch",
    "svm_train_smo",
    "svm_decision",
    "linear_svm_primal_train",
    "ovr_train",
    "ovr_decision",
    "ovr_predict",
]

METRIC_KINDS = ("poincare", "euclidean")

# alphas below this are treated as zero when collecting support vectors
SUPPORT_EPS = 1e-10


def _pairwise_distance(queries, points, metric: str) -> np.ndarray:
    Q = np.atleast_2d(np.asarray(queries, dtype=np.float64))
    P = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if Q.shape[1] != P.shape[1]:
        raise ValueError(f"dimension mismatch: {Q.shape[1]} vs {P.shape[1]}")
    if metric == "poincare":
        return pairwise_poincare_distance(Q, P)
    sq = (
        np.sum(Q * Q, axis=1)[:, None]
        + np.sum(P * P, axis=1)[None, :]
        - 2.0 * (Q @ P.T)
    )
    np.maximum(sq, 0.0, out=sq)
    return np.sqrt(sq)


@dataclass(frozen=True)
class KnnModel:
    """Lazy learner: stored training data plus k and the metric name."""

    points: np.ndarray
    labels: np.ndarray
    k: int
    metric: str


def knn_fit(points, labels, k: int, metric: str = "poincare") -> KnnModel:
    """Store the training set verbatim after validating shapes and k."""
    P = np.atleast_2d(np.asarray(points, dtype=np.float64))
    y = np.asarray(labels, dtype=np.int64)
    if P.shape[0] == 0:
        raise ValueError("training set is empty")
    if y.shape != (P.shape[0],):
        raise ValueError(f"{P.shape[0]} points but {y.shape} labels")
    if not (1 <= k <= P.shape[0]):
        raise ValueError(f"k must lie in [1, {P.shape[0]}], got {k}")
    if metric not in METRIC_KINDS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRIC_KINDS}")
    return KnnModel(points=P, labels=y, k=int(k), metric=metric)


def _vote(d_row: np.ndarray, model: KnnModel) -> int:
    # stable sort: equal distances keep training index order
    nearest = np.argsort(d_row, kind="stable")[: model.k]
    votes = model.labels[nearest]
    classes, counts = np.unique(votes, return_counts=True)
    top = classes[counts == counts.max()]
    if top.size == 1:
        return int(top[0])
    # vote tie: smallest summed distance to the query, then smallest id
    sums = np.array([d_row[nearest[votes == c]].sum() for c in top])
    return int(top[sums == sums.min()].min())


def knn_predict_batch(model: KnnModel, queries) -> np.ndarray:
    """Predicted class id per query row."""
    d = _pairwise_distance(queries, model.points, model.metric)
    return np.array([_vote(row, model) for row in d], dtype=np.int64)


def knn_predict(model: KnnModel, query) -> int:
    """Majority label among the k nearest training points.

    Distance ties at the k-th rank are broken by training index order;
    vote ties by the smallest summed distance, then the smallest class id.
    """
    q = np.asarray(query, dtype=np.float64)
    if q.ndim != 1:
        raise ValueError(f"query must be a single vector, got shape {q.shape}")
    return int(knn_predict_batch(model, q[None, :])[0])


@dataclass(frozen=True)
class SvmModel:
    """Fitted binary kernel SVM (dual form).

    converged is False when the KKT residual still exceeded kkt_tol at the
    iteration budget (or the pair step stalled on an indefinite Gram); the
    residual is reported either way. psd_warning records whether any
    working pair exhibited negative curvature, a witness that the Gram
    is not positive semidefinite.
    """

    alphas: np.ndarray
    bias: float
    support_indices: np.ndarray
    labels: np.ndarray
    kernel: Optional[KernelSpec]
    C: float
    converged: bool
    kkt_residual: float
    dual_objective: float
    psd_warning: bool
    n_iter: int
    objective_history: Optional[np.ndarray] = None


def _dual_objective(alpha: np.ndarray, y: np.ndarray, F: np.ndarray) -> float:
    # W = sum(alpha) - 1/2 sum_k alpha_k y_k (F_k + y_k), since
    # F_k + y_k = sum_m alpha_m y_m K[m, k]
    return float(np.sum(alpha) - 0.5 * np.sum(alpha * y * (F + y)))


def svm_train_smo(
    gram: Union[GramMatrix, np.ndarray],
    labels,
    C: float = 1.0,
    kkt_tol: float = 1e-3,
    max_passes: int = 1000,
    track_objective: bool = False,
) -> SvmModel:
    """Train a binary soft-margin SVM on a precomputed Gram matrix by SMO.

    Each iteration updates the maximal violating pair (Keerthi's working
    set selection): i from the candidates whose F may still decrease the
    violation from below, j from above; convergence when
    max_low F - min_up F <= kkt_tol. F_k = sum_m alpha_m y_m K[m,k] - y_k
    is maintained incrementally, so one iteration costs O(n). The budget
    is max_passes * n iterations; running out is reported through
    converged/kkt_residual, not raised.
    """
    if isinstance(gram, GramMatrix):
        K = gram.entries
        spec = gram.spec
    else:
        K = np.asarray(gram, dtype=np.float64)
        spec = None
        if K.ndim != 2 or K.shape[0] != K.shape[1]:
            raise ValueError(f"Gram matrix must be square, got shape {K.shape}")
        if not np.all(np.isfinite(K)):
            raise ValueError("Gram matrix contains non-finite entries")
    y = np.asarray(labels, dtype=np.float64)
    n = K.shape[0]
    if y.shape != (n,):
        raise ValueError(f"{n}x{n} Gram but {y.shape} labels")
    if not set(np.unique(y)) <= {-1.0, 1.0}:
        raise ValueError("labels must be -1 or +1")
    if len(np.unique(y)) < 2:
        raise ValueError("both classes must be present")
    if not (math.isfinite(C) and C > 0):
        raise ValueError(f"C must be positive, got {C}")

    pos = y > 0
    alpha = np.zeros(n)
    F = -y.copy()
    psd_warning = False
    history = [] if track_objective else None
    stalled = False
    it = 0
    budget = max_passes * n
    # rounding can leave an alpha one ulp off its bound, which would keep
    # it in the working set and jam the pair update against the box; snap
    # near-bound values to the exact bound instead
    snap = 1e-12 * C

    def _snap(a: float) -> float:
        if a < snap:
            return 0.0
        if a > C - snap:
            return C
        return a

    while it < budget:
        up = (pos & (alpha < C)) | (~pos & (alpha > 0))
        low = (pos & (alpha > 0)) | (~pos & (alpha < C))
        if not up.any() or not low.any():
            break
        up_idx = np.flatnonzero(up)
        low_idx = np.flatnonzero(low)
        j = up_idx[np.argmin(F[up_idx])]
        i = low_idx[np.argmax(F[low_idx])]
        if F[i] - F[j] <= kkt_tol:
            break
        eta_raw = K[i, i] + K[j, j] - 2.0 * K[i, j]
        if eta_raw < -1e-12:
            psd_warning = True
        eta = max(eta_raw, 1e-12)
        a_i, a_j = alpha[i], alpha[j]
        a_j_new = a_j + y[j] * (F[i] - F[j]) / eta
        if y[i] != y[j]:
            lo, hi = max(0.0, a_j - a_i), min(C, C + a_j - a_i)
        else:
            lo, hi = max(0.0, a_i + a_j - C), min(C, a_i + a_j)
        a_j_new = _snap(min(max(a_j_new, lo), hi))
        if abs(a_j_new - a_j) < 1e-14:
            # clip box blocks the maximal pair: no further progress possible
            stalled = True
            break
        a_i_new = _snap(min(max(a_i - y[i] * y[j] * (a_j_new - a_j), 0.0), C))
        F += (a_i_new - a_i) * y[i] * K[i, :] + (a_j_new - a_j) * y[j] * K[j, :]
        alpha[i], alpha[j] = a_i_new, a_j_new
        if track_objective:
            history.append(_dual_objective(alpha, y, F))
        it += 1

    up = (pos & (alpha < C)) | (~pos & (alpha > 0))
    low = (pos & (alpha > 0)) | (~pos & (alpha < C))
    if up.any() and low.any():
        b_up = float(F[up].min())
        b_low = float(F[low].max())
        residual = max(b_low - b_up, 0.0)
    else:
        b_up = b_low = 0.0
        residual = 0.0
    converged = residual <= kkt_tol and not stalled

    free = (alpha > SUPPORT_EPS) & (alpha < C - SUPPORT_EPS)
    if free.any():
        # every free support vector satisfies F_k = -b at optimality
        bias = float(-F[free].mean())
    else:
        bias = -(b_low + b_up) / 2.0

    return SvmModel(
        alphas=alpha,
        bias=bias,
        support_indices=np.flatnonzero(alpha > SUPPORT_EPS),
        labels=y,
        kernel=spec,
        C=float(C),
        converged=converged,
        kkt_residual=residual,
        dual_objective=_dual_objective(alpha, y, F),
        psd_warning=psd_warning,
        n_iter=it,
        objective_history=np.asarray(history) if track_objective else None,
    )


def svm_decision(model: SvmModel, kernel_row) -> float:
    """Signed decision value sum_i alpha_i y_i K(x_i, x) + b for one query."""
    row = np.asarray(kernel_row, dtype=np.float64)
    n = model.alphas.shape[0]
    if row.shape != (n,):
        raise ValueError(f"kernel row must have length {n}, got shape {row.shape}")
    return float(row @ (model.alphas * model.labels) + model.bias)


@dataclass(frozen=True)
class LinearSvmModel:
    """Fitted primal linear SVM: weights, bias, and the per-epoch objective."""

    weights: np.ndarray
    bias: float
    objective_history: np.ndarray


def _squared_hinge_objective(X, y, w, b, C):
    margins = 1.0 - y * (X @ w + b)
    np.maximum(margins, 0.0, out=margins)
    return 0.5 * float(w @ w) + C * float(margins @ margins)


def linear_svm_primal_train(
    vectors,
    labels,
    C: float = 1.0,
    epochs: int = 100,
    seed: int = 0,
    lr: float = 0.05,
) -> LinearSvmModel:
    """Primal squared-hinge SVM via deterministic-shuffled subgradient descent.

    Objective: 1/2 |w|^2 + C sum_i max(0, 1 - y_i (w.x_i + b))^2, visited
    one sample at a time in an order reshuffled each epoch from a seeded
    generator; the step size decays harmonically with the epoch. The
    per-epoch objective is recorded so callers can check descent.
    """
    X = np.atleast_2d(np.asarray(vectors, dtype=np.float64))
    y = np.asarray(labels, dtype=np.float64)
    if y.shape != (X.shape[0],):
        raise ValueError(f"{X.shape[0]} vectors but {y.shape} labels")
    if not np.all(np.isfinite(X)):
        raise ValueError("features contain non-finite values")
    if not set(np.unique(y)) <= {-1.0, 1.0} or len(np.unique(y)) < 2:
        raise ValueError("labels must be -1/+1 with both classes present")
    if not (math.isfinite(C) and C > 0):
        raise ValueError(f"C must be positive, got {C}")
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")

    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    rng = np.random.default_rng(seed)
    history = np.empty(epochs)
    for epoch in range(epochs):
        step = lr / (1.0 + epoch)
        for i in rng.permutation(n):
            margin = y[i] * (X[i] @ w + b)
            g_w = w / n
            g_b = 0.0
            if margin < 1.0:
                pull = 2.0 * C * (1.0 - margin) * y[i]
                g_w = g_w - pull * X[i]
                g_b = -pull
            w -= step * g_w
            b -= step * g_b
        history[epoch] = _squared_hinge_objective(X, y, w, b, C)
    return LinearSvmModel(weights=w, bias=float(b), objective_history=history)


@dataclass(frozen=True)
class SmoConfig:
    """One-vs-rest trainer config for the kernel SVM route."""

    kernel: KernelSpec
    C: float = 1.0
    kkt_tol: float = 1e-3
    max_passes: int = 1000


@dataclass(frozen=True)
class LinearPrimalConfig:
    """One-vs-rest trainer config for the primal linear route."""

    C: float = 1.0
    epochs: int = 100
    seed: int = 0
    lr: float = 0.05


@dataclass(frozen=True)
class OvrModel:
    """One binary model per class id, over a shared training representation.

    train_points is retained only for the kernel route, where decisions
    need kernel rows against the training set.
    """

    classes: np.ndarray
    models: tuple
    kind: str
    train_points: Optional[np.ndarray] = None


def ovr_train(points, labels, config: Union[SmoConfig, LinearPrimalConfig]) -> OvrModel:
    """Train one binary classifier per class (that class vs. the rest)."""
    P = np.atleast_2d(np.asarray(points, dtype=np.float64))
    y = np.asarray(labels, dtype=np.int64)
    if y.shape != (P.shape[0],):
        raise ValueError(f"{P.shape[0]} points but {y.shape} labels")
    classes = np.unique(y)
    if classes.size < 2:
        raise ValueError("one-vs-rest needs at least 2 classes")

    if isinstance(config, SmoConfig):
        gram = gram_matrix(P, config.kernel)
        models = tuple(
            svm_train_smo(
                gram,
                np.where(y == c, 1.0, -1.0),
                C=config.C,
                kkt_tol=config.kkt_tol,
                max_passes=config.max_passes,
            )
            for c in classes
        )
        return OvrModel(classes=classes, models=models, kind="smo", train_points=P)
    if isinstance(config, LinearPrimalConfig):
        models = tuple(
            linear_svm_primal_train(
                P,
                np.where(y == c, 1.0, -1.0),
                C=config.C,
                epochs=config.epochs,
                seed=config.seed,
                lr=config.lr,
            )
            for c in classes
        )
        return OvrModel(classes=classes, models=models, kind="linear")
    raise TypeError(f"unsupported trainer config {type(config).__name__}")


def ovr_decision(model: OvrModel, queries) -> np.ndarray:
    """Decision-value matrix, one row per query and one column per class."""
    Q = np.atleast_2d(np.asarray(queries, dtype=np.float64))
    if model.kind == "smo":
        if Q.shape[1] != model.train_points.shape[1]:
            raise ValueError(
                f"dimension mismatch: {Q.shape[1]} vs {model.train_points.shape[1]}"
            )
        rows = cross_kernel(Q, model.train_points, model.models[0].kernel)
        cols = [rows @ (m.alphas * m.labels) + m.bias for m in model.models]
    else:
        if Q.shape[1] != model.models[0].weights.shape[0]:
            raise ValueError(
                f"dimension mismatch: {Q.shape[1]} vs {model.models[0].weights.shape[0]}"
            )
        cols = [Q @ m.weights + m.bias for m in model.models]
    return np.stack(cols, axis=1)


def ovr_predict(model: OvrModel, queries) -> np.ndarray:
    """Argmax class per query; exact ties go to the smallest class id."""
    scores = ovr_decision(model, queries)
    # argmax returns the first maximum and classes are sorted ascending
    return model.classes[np.argmax(scores, axis=1)]
