"""Brute-force reference computations that share no code with the package."""

import itertools
import math

import numpy as np

FACE_CENTERS_UNIT = np.array(
    [[0.0, 0.5, 0.5], [1.0, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 1.0, 0.5], [0.5, 0.5, 0.0], [0.5, 0.5, 1.0]]
)


def column_sixsoid_volume(n=2000):
    """Six-covered volume of the unit cube by exact x-intervals on an n x n (y, z) grid.

    For fixed (y, z) each ball constrains x to an interval; the six-covered
    set along that column is their intersection.
    """
    g = (np.arange(n) + 0.5) / n
    Y, Z = np.meshgrid(g, g, indexing="ij")
    lo = np.full(Y.shape, -np.inf)
    hi = np.full(Y.shape, np.inf)
    ok = np.ones(Y.shape, bool)
    for cx, cy, cz in FACE_CENTERS_UNIT:
        rem = 1.0 - (Y - cy) ** 2 - (Z - cz) ** 2
        ok &= rem >= 0
        h = np.sqrt(np.clip(rem, 0, None))
        lo = np.maximum(lo, cx - h)
        hi = np.minimum(hi, cx + h)
    return float(np.where(ok, np.clip(hi - lo, 0, None), 0.0).mean())


def mc_cube_counts(n, seed):
    """Coverage counts of n uniform points in the unit cube, plain numpy."""
    rng = np.random.default_rng(seed)
    p = rng.random((n, 3))
    cnt = np.zeros(n, dtype=int)
    for c in FACE_CENTERS_UNIT:
        cnt += ((p - c) ** 2).sum(axis=1) <= 1.0
    return cnt


def slice_area_mc(x, k, n, seed, exact=False):
    """Area of the unit slice at depth x covered by >= k (or == k) circles."""
    rng = np.random.default_rng(seed)
    p = rng.random((n, 2))
    circles = [
        ((0.5, 0.5), math.sqrt(1 - x * x)),
        ((0.5, 0.5), math.sqrt(max(2 * x - x * x, 0.0))),
    ] + [((cy, cz), math.sqrt(1 - (x - 0.5) ** 2)) for cy, cz in [(0, 0.5), (1, 0.5), (0.5, 0), (0.5, 1)]]
    cnt = np.zeros(n, dtype=int)
    for (cy, cz), r in circles:
        cnt += (p[:, 0] - cy) ** 2 + (p[:, 1] - cz) ** 2 <= r * r
    hit = cnt == k if exact else cnt >= k
    m = hit.mean()
    return m, math.sqrt(m * (1 - m) / n)


def circle_intersections(c1, r1, c2, r2, iters=200):
    """Intersection points of two circles by bisection on the angle of circle 1."""
    (x1, y1), (x2, y2) = c1, c2

    def f(t):
        px, py = x1 + r1 * math.cos(t), y1 + r1 * math.sin(t)
        return math.hypot(px - x2, py - y2) - r2

    ts = np.linspace(0, 2 * math.pi, 4001)
    vals = [f(t) for t in ts]
    roots = []
    for a, b, fa, fb in zip(ts[:-1], ts[1:], vals[:-1], vals[1:]):
        if fa == 0:
            roots.append(a)
        elif fa * fb < 0:
            for _ in range(iters):
                m = (a + b) / 2
                if f(a) * f(m) <= 0:
                    b = m
                else:
                    a = m
            roots.append((a + b) / 2)
    return [(x1 + r1 * math.cos(t), y1 + r1 * math.sin(t)) for t in roots]


def distinct_faces(cells):
    """Faces of a cell complex; a face is keyed by its axis and the cell above it."""
    faces = set()
    for c in cells:
        for axis in range(3):
            lower = tuple(c)
            upper = tuple(v + (1 if a == axis else 0) for a, v in enumerate(c))
            faces.add((axis, lower))
            faces.add((axis, upper))
    return faces


def box_cells(n):
    return list(itertools.product(range(n), repeat=3))
