"""Gyrovector operations on the Poincare ball.

Points live in the open ball of radius ``s`` (default 1). The two basic
operators are Mobius addition

    x (+) y = ((1 + 2/s^2 <x,y> + 1/s^2 |y|^2) x + (1 - 1/s^2 |x|^2) y)
              / (1 + 2/s^2 <x,y> + 1/s^4 |x|^2 |y|^2)

and Mobius scalar multiplication

    r (*) x = s * tanh(r * artanh(|x|/s)) * x/|x|

from which geodesics, midpoints and weighted midpoints are built. The
hyperbolic distance on the unit ball is

    d(u, v) = arccosh(1 + 2 |u-v|^2 / ((1 - |u|^2)(1 - |v|^2)))

All computation is in float64; the operators compound rounding error and
32-bit floats do not survive deep compositions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BallParams",
    "DEFAULT_BALL",
    "ball_point",
    "clamp_to_ball",
    "mobius_add",
    "mobius_neg",
    "mobius_scale",
    "geodesic_point",
    "midpoint",
    "weighted_midpoint",
    "poincare_distance",
    "pairwise_poincare_distance",
]


@dataclass(frozen=True)
class BallParams:
    """Ball radius ``s`` and the numerical margin kept to the boundary."""

    s: float = 1.0
    boundary_eps: float = 1e-7

    def __post_init__(self):
        if not (math.isfinite(self.s) and self.s > 0):
            raise ValueError(f"ball radius s must be positive, got {self.s}")
        if not (0 < self.boundary_eps <= 1e-3):
            raise ValueError(
                f"boundary_eps must lie in (0, 1e-3], got {self.boundary_eps}"
            )

    @property
    def max_norm(self) -> float:
        """Largest norm a clamped point is assigned."""
        return self.s * (1.0 - self.boundary_eps)


DEFAULT_BALL = BallParams()


def _as_vector(x, name: str = "point") -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] < 1:
        raise ValueError(f"{name} must be a 1-D vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains non-finite coordinates")
    return x


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")


def ball_point(coords, params: BallParams = DEFAULT_BALL) -> np.ndarray:
    """Validate ``coords`` as a point strictly inside the ball.

    Norm violations within ``boundary_eps`` of ``s`` are clamped back to
    ``s * (1 - boundary_eps)``; anything further out is rejected.
    """
    x = _as_vector(coords)
    n = float(np.linalg.norm(x))
    if n < params.s:
        return x
    if n <= params.s + params.boundary_eps:
        return x * (params.max_norm / n)
    raise ValueError(
        f"point norm {n} exceeds ball radius {params.s} beyond the clamping margin"
    )


def clamp_to_ball(x, params: BallParams = DEFAULT_BALL) -> np.ndarray:
    """Rescale ``x`` to norm ``s * (1 - boundary_eps)`` if its norm reaches ``s``."""
    x = _as_vector(x)
    n = float(np.linalg.norm(x))
    if n >= params.s:
        return x * (params.max_norm / n)
    return x


def mobius_add(a, b, params: BallParams = DEFAULT_BALL) -> np.ndarray:
    """Mobius addition a (+) b.

    Non-commutative and non-associative. The output is clamped back
    inside the ball if rounding pushes its norm to ``s`` or beyond.
    """
    a = _as_vector(a, "a")
    b = _as_vector(b, "b")
    _check_same_dim(a, b)
    s2 = params.s * params.s
    dot = float(np.dot(a, b))
    na2 = float(np.dot(a, a))
    nb2 = float(np.dot(b, b))
    num = (1.0 + (2.0 * dot + nb2) / s2) * a + (1.0 - na2 / s2) * b
    den = 1.0 + (2.0 * dot) / s2 + (na2 * nb2) / (s2 * s2)
    return clamp_to_ball(num / den, params)


def mobius_neg(a) -> np.ndarray:
    """Gyrogroup inverse: coordinate-wise negation."""
    return -_as_vector(a, "a")


def mobius_scale(r: float, x, params: BallParams = DEFAULT_BALL) -> np.ndarray:
    """Mobius scalar multiplication r (*) x = s tanh(r artanh(|x|/s)) x/|x|.

    The origin is a removable singularity of x/|x| and maps to itself.
    """
    if not math.isfinite(r):
        raise ValueError(f"scalar r must be finite, got {r}")
    x = _as_vector(x, "x")
    n = float(np.linalg.norm(x))
    if n == 0.0:
        return np.zeros_like(x)
    # artanh blows up at 1; points numerically on the boundary are pulled in.
    ratio = min(n / params.s, 1.0 - params.boundary_eps)
    mag = params.s * math.tanh(r * math.atanh(ratio))
    return clamp_to_ball((mag / n) * x, params)


def geodesic_point(a, b, t: float, params: BallParams = DEFAULT_BALL) -> np.ndarray:
    """Point at fraction ``t`` along the geodesic from a to b.

    Parametrized as a (+) ((-a (+) b) (*) t); satisfies
    d(a, result) = t * d(a, b).
    """
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"t must lie in [0, 1], got {t}")
    a = _as_vector(a, "a")
    b = _as_vector(b, "b")
    _check_same_dim(a, b)
    if t == 0.0:
        return a.copy()
    if t == 1.0:
        return b.copy()
    step = mobius_scale(t, mobius_add(mobius_neg(a), b, params), params)
    return mobius_add(a, step, params)


def midpoint(a, b, params: BallParams = DEFAULT_BALL) -> np.ndarray:
    """Geodesic midpoint, i.e. the t = 1/2 point; equidistant from a and b."""
    return geodesic_point(a, b, 0.5, params)


def weighted_midpoint(
    a, b, m_a: float, m_b: float, params: BallParams = DEFAULT_BALL
) -> np.ndarray:
    """Weighted midpoint M_{ab|m_a m_b}: the geodesic point at t = m_b / (m_a + m_b).

    Splits the geodesic so that d(a, .) / d(., b) = m_b / m_a.
    """
    for name, m in (("m_a", m_a), ("m_b", m_b)):
        if not (math.isfinite(m) and m > 0):
            raise ValueError(f"weight {name} must be positive and finite, got {m}")
    return geodesic_point(a, b, m_b / (m_a + m_b), params)


def poincare_distance(u, v) -> float:
    """Hyperbolic distance between two points of the open unit ball.

    d(u, v) = arccosh(1 + 2 |u-v|^2 / ((1 - |u|^2)(1 - |v|^2)))

    Stated for the unit ball only; rescale coordinates by 1/s first when
    working at a different radius. The arccosh argument is clamped below
    at 1 to absorb rounding on near-identical points.
    """
    u = _as_vector(u, "u")
    v = _as_vector(v, "v")
    _check_same_dim(u, v)
    nu2 = float(np.dot(u, u))
    nv2 = float(np.dot(v, v))
    if nu2 >= 1.0 or nv2 >= 1.0:
        raise ValueError("poincare_distance requires points strictly inside the unit ball")
    diff = u - v
    arg = 1.0 + 2.0 * float(np.dot(diff, diff)) / ((1.0 - nu2) * (1.0 - nv2))
    return math.acosh(max(arg, 1.0))


def pairwise_poincare_distance(U, V) -> np.ndarray:
    """Distance matrix D[i, j] = d(U[i], V[j]) over unit-ball row stacks."""
    U = np.atleast_2d(np.asarray(U, dtype=np.float64))
    V = np.atleast_2d(np.asarray(V, dtype=np.float64))
    if U.shape[1] != V.shape[1]:
        raise ValueError(f"dimension mismatch: {U.shape[1]} vs {V.shape[1]}")
    if not (np.all(np.isfinite(U)) and np.all(np.isfinite(V))):
        raise ValueError("non-finite coordinates")
    nu2 = np.sum(U * U, axis=1)
    nv2 = np.sum(V * V, axis=1)
    if np.any(nu2 >= 1.0) or np.any(nv2 >= 1.0):
        raise ValueError("pairwise_poincare_distance requires points strictly inside the unit ball")
    sq = nu2[:, None] + nv2[None, :] - 2.0 * (U @ V.T)
    np.maximum(sq, 0.0, out=sq)
    arg = 1.0 + 2.0 * sq / ((1.0 - nu2)[:, None] * (1.0 - nv2)[None, :])
    np.maximum(arg, 1.0, out=arg)
    return np.arccosh(arg)
