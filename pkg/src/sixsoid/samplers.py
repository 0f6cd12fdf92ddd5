"""Slice circle layout and the deterministic grid sampler.

A plane at depth ``x`` cuts the six sensing spheres of a cube of side ``R``
in six circles. In the plane's own ``(y, z)`` frame the slice is the square
``[0, R]^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

MAX_K = 6
SLICE_CIRCLE_NAMES = ("top", "bottom", "y1", "y2", "z1", "z2")


def check_depth(x: float, R: float, upper: float | None = None) -> None:
    if not (R > 0 and math.isfinite(R)):
        raise DomainError(f"cell side R must be positive, got {R}")
    upper = R if upper is None else upper
    if not (0.0 <= x <= upper):
        raise DomainError(f"depth x={x} outside [0, {upper}]")


def slice_circles(x: float, R: float) -> tuple[np.ndarray, np.ndarray]:
    """Centers ``(6, 2)`` and radii ``(6,)`` of the slice circles at depth ``x``.

    Order matches :data:`SLICE_CIRCLE_NAMES`.
    """
    check_depth(x, R)
    h = R / 2
    centers = np.array([[h, h], [h, h], [0.0, h], [R, h], [h, 0.0], [h, R]])
    side2 = R * R - (x - h) ** 2
    radii = np.sqrt(np.maximum([R * R - x * x, R * R - (R - x) ** 2, side2, side2, side2, side2], 0.0))
    return centers, radii


@dataclass
class SliceCoverage:
    """Per-k areas of one slice together with their error estimates.

    ``exact[k]`` is the area covered by exactly ``k`` circles; ``at_least``
    is its reverse cumulative sum. Error arrays are indexed the same way.
    """

    x: float
    R: float
    exact: np.ndarray
    exact_se: np.ndarray
    at_least_se: np.ndarray
    resolution: float
    method: str
    error_bound: np.ndarray | None = None
    n_samples: int = 0
    at_least_arr: np.ndarray = field(init=False)

    def __post_init__(self):
        self.at_least_arr = np.cumsum(self.exact[::-1])[::-1]

    def _check_k(self, k: int) -> None:
        if not (isinstance(k, (int, np.integer)) and 0 <= k <= MAX_K):
            raise DomainError(f"coverage level k must be an integer in 0..{MAX_K}, got {k!r}")

    def at_least(self, k: int) -> float:
        self._check_k(k)
        return float(self.at_least_arr[k])

    def exactly(self, k: int) -> float:
        self._check_k(k)
        return float(self.exact[k])

    def at_least_error(self, k: int) -> float:
        self._check_k(k)
        return float(self.at_least_se[k])

    def exactly_error(self, k: int) -> float:
        self._check_k(k)
        return float(self.exact_se[k])


@dataclass(frozen=True)
class GridSampler:
    """Midpoint-grid classifier over the ``resolution x resolution`` slice square.

    Error model: only cells cut by a region boundary can be misclassified,
    each by at most one cell area. Boundary cells are those whose class
    differs from a 4-neighbor. Treating their errors as independent and
    uniform, but repeated across the 8 symmetric copies of the slice (the
    grid shares the square's symmetry), gives
    ``se = h^2 * sqrt(8 * n_boundary / 12)``.
    """

    resolution: int = 2048
    symmetry_order: int = 8

    def __post_init__(self):
        if self.resolution < 2:
            raise DomainError("grid resolution must be at least 2")

    def count_grid(self, x: float, R: float) -> np.ndarray:
        centers, radii = slice_circles(x, R)
        n = self.resolution
        g = (np.arange(n) + 0.5) * (R / n)
        counts = np.zeros((n, n), dtype=np.int8)
        for (cy, cz), r in zip(centers, radii):
            dy2 = (g - cy) ** 2
            dz2 = (g - cz) ** 2
            counts += (dy2[:, None] + dz2[None, :]) <= r * r
        return counts

    def coverage(self, x: float, R: float) -> SliceCoverage:
        counts = self.count_grid(x, R)
        n = self.resolution
        cell = (R / n) ** 2
        exact = np.bincount(counts.ravel(), minlength=MAX_K + 1)[: MAX_K + 1] * cell

        n_boundary = np.zeros(MAX_K + 1)
        for k in range(1, MAX_K + 1):
            n_boundary[k] = _boundary_cells(counts >= k)
        at_least_se = cell * np.sqrt(self.symmetry_order * n_boundary / 12.0)
        # exactly-k is bounded by the >=k and >=k+1 boundaries
        nxt = np.append(at_least_se[1:], 0.0)
        exact_se = np.sqrt(at_least_se**2 + nxt**2)
        return SliceCoverage(
            x=x,
            R=R,
            exact=exact,
            exact_se=exact_se,
            at_least_se=at_least_se,
            resolution=R / n,
            method=f"grid{n}",
            error_bound=n_boundary * cell,
            n_samples=n * n,
        )


def _boundary_cells(ind: np.ndarray) -> int:
    b = np.zeros_like(ind)
    dy = ind[1:] != ind[:-1]
    dz = ind[:, 1:] != ind[:, :-1]
    b[1:] |= dy
    b[:-1] |= dy
    b[:, 1:] |= dz
    b[:, :-1] |= dz
    return int(b.sum())
