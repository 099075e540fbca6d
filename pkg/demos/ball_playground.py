"""A tour of the ball arithmetic: addition, scaling, geodesics, distance.

Run with: python3 demos/ball_playground.py
"""

import numpy as np

from gyrotext.gyroball import (
    geodesic_point,
    midpoint,
    mobius_add,
    mobius_neg,
    mobius_scale,
    poincare_distance,
    weighted_midpoint,
)


def show(label, value):
    print(f"  {label:<38} {np.round(value, 6)}")


def main():
    a = np.array([0.5, 0.0])
    b = np.array([0.0, 0.5])

    print("Mobius addition is not ordinary vector addition:")
    show("a (+) b", mobius_add(a, b))
    show("b (+) a", mobius_add(b, a))
    gap = np.linalg.norm(mobius_add(a, b) - mobius_add(b, a))
    print(f"  the two orders differ by {gap:.4f}, so there is no shortcut\n")

    print("But the group laws hold:")
    show("0 (+) a", mobius_add(np.zeros(2), a))
    show("(-a) (+) a", mobius_add(mobius_neg(a), a))
    show("(-a) (+) (a (+) b) recovers b", mobius_add(mobius_neg(a), mobius_add(a, b)))
    print()

    print("Scaling bends toward the boundary instead of leaving the ball:")
    for r in (1.0, 2.0, 4.0, 8.0):
        p = mobius_scale(r, a)
        show(f"{r:g} (*) a  (norm {np.linalg.norm(p):.6f})", p)
    print("  no scalar ever reaches norm 1\n")

    print("Distances blow up near the boundary:")
    for r in (0.5, 0.9, 0.99, 0.999):
        print(f"  d(0, ({r}, 0)) = {poincare_distance(np.zeros(2), np.array([r, 0.0])):.4f}")
    print()

    print("Geodesic from a to b, with equal spacing in the ball metric:")
    d_ab = poincare_distance(a, b)
    for t in (0.0, 0.25, 0.5, 0.75, 1.0):
        g = geodesic_point(a, b, t)
        print(f"  t={t:<5} point {np.round(g, 4)}  d(a, .) = {poincare_distance(a, g):.4f}"
              f"  (t * d(a,b) = {t * d_ab:.4f})")
    print()

    print("Midpoints split distances by mass:")
    m = midpoint(a, b)
    show("plain midpoint", m)
    print(f"  d(a, m) = {poincare_distance(a, m):.4f}, d(m, b) = {poincare_distance(m, b):.4f}")
    w = weighted_midpoint(a, b, 3.0, 1.0)
    show("weighted, masses 3 : 1", w)
    print(f"  d(a, w) / d(w, b) = "
          f"{poincare_distance(a, w) / poincare_distance(w, b):.4f} (mass ratio 1/3)")


if __name__ == "__main__":
    main()
