"""Kernels over ball points, Gram matrices, and positive-semidefiniteness checks.

The geodesic kernel family is

    K(u, v) = exp(-lambda * d(u, v)^q),   lambda, q > 0

with d the hyperbolic distance of the unit ball. q = 1 is the geodesic
Laplacian kernel (a valid Mercer kernel on the ball); q = 2 is the geodesic
Gaussian kernel, which is not positive semidefinite there - some point
configurations give Gram matrices with negative eigenvalues. Euclidean
RBF exp(-lambda |u - v|^2) and the plain dot product are provided as
baselines. The eigensolver used for the PSD diagnostic is an in-repo
cyclic Jacobi iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .gyroball import pairwise_poincare_distance, poincare_distance

__all__ = [
    "KernelSpec",
    "GramMatrix",
    "PsdReport",
    "geodesic_kernel",
    "kernel_value",
    "cross_kernel",
    "gram_matrix",
    "jacobi_eigenvalues",
    "min_eigenvalue",
    "psd_check",
]

KERNEL_KINDS = ("geodesic", "euclidean_rbf", "linear")


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family selector: kind plus rate lambda and geodesic exponent q.

    q is only meaningful for the geodesic kind (1 = Laplacian, 2 = Gaussian)
    and is ignored otherwise.
    """

    kind: str = "geodesic"
    lam: float = 1.0
    q: float = 1.0

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"unknown kernel kind {self.kind!r}; expected one of {KERNEL_KINDS}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if not (math.isfinite(self.q) and self.q > 0):
            raise ValueError(f"q must be positive, got {self.q}")


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric kernel matrix over one point set, tagged with its spec."""

    entries: np.ndarray
    spec: KernelSpec

    def __post_init__(self):
        a = self.entries
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"Gram matrix must be square, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("Gram matrix contains non-finite entries")
        if np.abs(a - a.T).max() > 1e-12:
            raise ValueError("Gram matrix is asymmetric beyond tolerance")

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def geodesic_kernel(u, v, lam: float = 1.0, q: float = 1.0) -> float:
    """exp(-lambda * d(u, v)^q) for unit-ball points; equals 1 iff u == v."""
    if not (math.isfinite(lam) and lam > 0):
        raise ValueError(f"lambda must be positive, got {lam}")
    if not (math.isfinite(q) and q > 0):
        raise ValueError(f"q must be positive, got {q}")
    return math.exp(-lam * poincare_distance(u, v) ** q)


def kernel_value(u, v, spec: KernelSpec) -> float:
    """Evaluate the kernel selected by ``spec`` on a single pair."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if spec.kind == "geodesic":
        return geodesic_kernel(u, v, spec.lam, spec.q)
    if spec.kind == "euclidean_rbf":
        diff = u - v
        return math.exp(-spec.lam * float(np.dot(diff, diff)))
    return float(np.dot(u, v))


def cross_kernel(queries, points, spec: KernelSpec) -> np.ndarray:
    """Kernel matrix K[i, j] between query rows and reference point rows."""
    Q = np.atleast_2d(np.asarray(queries, dtype=np.float64))
    P = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if Q.shape[1] != P.shape[1]:
        raise ValueError(f"dimension mismatch: {Q.shape[1]} vs {P.shape[1]}")
    if spec.kind == "geodesic":
        d = pairwise_poincare_distance(Q, P)
        return np.exp(-spec.lam * d**spec.q)
    if spec.kind == "euclidean_rbf":
        sq = (
            np.sum(Q * Q, axis=1)[:, None]
            + np.sum(P * P, axis=1)[None, :]
            - 2.0 * (Q @ P.T)
        )
        np.maximum(sq, 0.0, out=sq)
        return np.exp(-spec.lam * sq)
    return Q @ P.T


def gram_matrix(points, spec: KernelSpec) -> GramMatrix:
    """Build the symmetric Gram matrix of one point set.

    The upper triangle is computed once and mirrored, so symmetry is exact;
    the diagonal is written directly (exp(0) = 1 for geodesic and rbf).
    """
    P = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if P.shape[0] == 0:
        raise ValueError("gram_matrix requires at least one point")
    full = cross_kernel(P, P, spec)
    upper = np.triu(full, k=1)
    entries = upper + upper.T
    if spec.kind in ("geodesic", "euclidean_rbf"):
        np.fill_diagonal(entries, 1.0)
    else:
        np.fill_diagonal(entries, np.sum(P * P, axis=1))
    return GramMatrix(entries=entries, spec=spec)


def _as_symmetric(matrix) -> np.ndarray:
    if isinstance(matrix, GramMatrix):
        a = matrix.entries
    else:
        a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.abs(a).max()))
    if np.abs(a - a.T).max() > 1e-12 * scale:
        raise ValueError("matrix is asymmetric beyond tolerance")
    return np.array(a, dtype=np.float64)


def jacobi_eigenvalues(matrix, max_sweeps: int = 100) -> np.ndarray:
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm falls to
    1e-12 * trace (or hits zero), capped at ``max_sweeps`` sweeps.
    Returns the eigenvalues in ascending order.
    """
    a = _as_symmetric(matrix)
    n = a.shape[0]
    if n == 1:
        return a[0, :1].copy()
    threshold = max(1e-12 * float(np.trace(a)), 0.0)
    for _ in range(max_sweeps):
        off = math.sqrt(max(float(np.sum(a * a) - np.sum(np.diag(a) ** 2)), 0.0))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # tangent of the rotation zeroing a[p, q]; this form of the
                # quadratic root never overflows, unlike theta = delta/(2 apq)
                delta = a[q, q] - a[p, p]
                t = 2.0 * apq * math.copysign(1.0, delta) / (
                    abs(delta) + math.hypot(delta, 2.0 * apq)
                )
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                rot_p = c * a[p, :] - s * a[q, :]
                rot_q = s * a[p, :] + c * a[q, :]
                a[p, :] = rot_p
                a[q, :] = rot_q
                a[:, p] = rot_p
                a[:, q] = rot_q
                a[p, p] = c * rot_p[p] - s * rot_p[q]
                a[q, q] = s * rot_q[p] + c * rot_q[q]
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.sort(np.diag(a))


def min_eigenvalue(gram) -> float:
    """Smallest eigenvalue of a Gram (or any symmetric) matrix via Jacobi."""
    return float(jacobi_eigenvalues(gram)[0])


class PsdReport(NamedTuple):
    passed: bool
    min_eigenvalue: float
    tol: float


def psd_check(gram, tol: float = 1e-8) -> PsdReport:
    """Positive-semidefiniteness test with a trace-scaled tolerance.

    Passes iff the smallest eigenvalue is >= -tol * max(1, trace / n),
    which keeps the threshold dimensionless across kernel rates.
    """
    a = _as_symmetric(gram)
    lo = min_eigenvalue(a)
    scale = max(1.0, float(np.trace(a)) / a.shape[0])
    return PsdReport(passed=lo >= -tol * scale, min_eigenvalue=lo, tol=tol)
