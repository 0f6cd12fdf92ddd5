"""Elementary 3D types, the six-sphere cube construction and coverage counting.

Coordinates follow one convention throughout the package: cells are
axis-aligned, and the first coordinate (``x``) is the slicing axis, measured
from the cell face at ``min_corner.x``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Vec3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise DomainError(f"Vec3 components must be finite, got {tuple(self)}")

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def scaled(self, c: float) -> "Vec3":
        return Vec3(c * self.x, c * self.y, c * self.z)

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def distance_squared(self, other: "Vec3") -> float:
        dx, dy, dz = self.x - other.x, self.y - other.y, self.z - other.z
        return dx * dx + dy * dy + dz * dz

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class Sphere:
    center: Vec3
    radius: float

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise DomainError(f"sphere radius must be positive, got {self.radius}")

    def contains(self, p: Vec3) -> bool:
        # closed ball
        return p.distance_squared(self.center) <= self.radius * self.radius


@dataclass(frozen=True)
class CubeCell:
    min_corner: Vec3
    side: float

    def __post_init__(self):
        if not (self.side > 0 and math.isfinite(self.side)):
            raise DomainError(f"cube side must be positive, got {self.side}")

    @property
    def center(self) -> Vec3:
        h = self.side / 2
        return self.min_corner + Vec3(h, h, h)

    @property
    def max_corner(self) -> Vec3:
        s = self.side
        return self.min_corner + Vec3(s, s, s)

    def distance_to_box(self, p: Vec3) -> float:
        lo, hi = self.min_corner, self.max_corner
        d = [max(l - c, 0.0, c - h) for c, l, h in zip(p, lo, hi)]
        return math.sqrt(sum(v * v for v in d))


def unit_cell(side: float = 1.0) -> CubeCell:
    return CubeCell(Vec3(0.0, 0.0, 0.0), side)


def face_centers(cell: CubeCell) -> list[Vec3]:
    """The six face centers of ``cell``.

    Order is fixed: slicing-axis faces first (``x = min``, ``x = max``), then
    the ``y`` faces, then the ``z`` faces.
    """
    c = cell.center
    h = cell.side / 2
    out = []
    for axis in range(3):
        for sign in (-1.0, 1.0):
            offset = [0.0, 0.0, 0.0]
            offset[axis] = sign * h
            out.append(c + Vec3(*offset))
    return out


class ArrangementMode(str, Enum):
    SINGLE_CUBE = "single-cube"
    TILING_NEIGHBORHOOD = "tiling-neighborhood"


@dataclass(frozen=True)
class SensorArrangement:
    spheres: tuple[Sphere, ...]
    mode: ArrangementMode = ArrangementMode.SINGLE_CUBE

    def __post_init__(self):
        if not self.spheres:
            raise DomainError("a sensor arrangement needs at least one sphere")

    @classmethod
    def single_cube(cls, cell: CubeCell) -> "SensorArrangement":
        spheres = tuple(Sphere(c, cell.side) for c in face_centers(cell))
        return cls(spheres, ArrangementMode.SINGLE_CUBE)

    @classmethod
    def tiling_neighborhood(cls, cell: CubeCell) -> "SensorArrangement":
        """Own six spheres plus every neighbor face-center sphere reaching the cell.

        A neighbor sensor is kept when its center lies strictly closer than
        ``R`` to the cell's bounding box. Cells further than one step away
        never qualify.
        """
        R = cell.side
        own = face_centers(cell)
        seen = {_key(c, cell) for c in own}
        extra = []
        for di, dj, dk in itertools.product((-1, 0, 1), repeat=3):
            if (di, dj, dk) == (0, 0, 0):
                continue
            nb = CubeCell(cell.min_corner + Vec3(di * R, dj * R, dk * R), R)
            for c in face_centers(nb):
                key = _key(c, cell)
                if key in seen:
                    continue
                seen.add(key)
                if cell.distance_to_box(c) < R:
                    extra.append(c)
        extra.sort(key=lambda v: _key(v, cell))
        spheres = tuple(Sphere(c, R) for c in own + extra)
        return cls(spheres, ArrangementMode.TILING_NEIGHBORHOOD)

    @classmethod
    def for_cell(cls, cell: CubeCell, mode: ArrangementMode | str) -> "SensorArrangement":
        mode = ArrangementMode(mode)
        if mode is ArrangementMode.SINGLE_CUBE:
            return cls.single_cube(cell)
        return cls.tiling_neighborhood(cell)

    def centers_array(self) -> np.ndarray:
        return np.array([tuple(s.center) for s in self.spheres], dtype=float)

    def radii_array(self) -> np.ndarray:
        return np.array([s.radius for s in self.spheres], dtype=float)

    def with_sphere(self, sphere: Sphere) -> "SensorArrangement":
        return SensorArrangement(self.spheres + (sphere,), self.mode)


def _key(p: Vec3, cell: CubeCell) -> tuple[int, int, int]:
    # face centers sit on the half-cell lattice; round to integer half-steps
    h = cell.side / 2
    return tuple(round((a - b) / h) for a, b in zip(p, cell.min_corner))


def coverage_count(p: Vec3, arr: SensorArrangement) -> int:
    """Number of spheres in ``arr`` whose closed ball contains ``p``."""
    return sum(1 for s in arr.spheres if s.contains(p))


def sixsoid_contains(p: Vec3, cell: CubeCell) -> bool:
    return coverage_count(p, SensorArrangement.single_cube(cell)) == 6


def coverage_counts(points: np.ndarray, centers: np.ndarray, radii: np.ndarray | float) -> np.ndarray:
    """Vectorized coverage count for an ``(n, d)`` array of points.

    Uses the same closed-ball test as :func:`coverage_count`.
    """
    points = np.asarray(points, dtype=float)
    centers = np.asarray(centers, dtype=float)
    radii = np.broadcast_to(np.asarray(radii, dtype=float), (len(centers),))
    counts = np.zeros(len(points), dtype=np.int16)
    for c, r in zip(centers, radii):
        d2 = np.zeros(len(points))
        for j in range(points.shape[1]):
            diff = points[:, j] - c[j]
            d2 += diff * diff
        counts += d2 <= r * r
    return counts


def cube_symmetries() -> list[np.ndarray]:
    """The 48 signed permutation matrices of the octahedral group."""
    mats = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            m = np.zeros((3, 3))
            for row, (col, s) in enumerate(zip(perm, signs)):
                m[row, col] = s
            mats.append(m)
    return mats


def apply_about(p: Vec3, m: np.ndarray, pivot: Vec3) -> Vec3:
    """Apply linear map ``m`` to ``p`` about the fixed point ``pivot``."""
    v = m @ (p - pivot).as_array()
    return pivot + Vec3(*map(float, v))


def transform_arrangement(arr: SensorArrangement, m: np.ndarray, pivot: Vec3) -> SensorArrangement:
    spheres = tuple(Sphere(apply_about(s.center, m, pivot), s.radius) for s in arr.spheres)
    return SensorArrangement(spheres, arr.mode)


def as_points(vs: Iterable[Vec3] | Sequence[Sequence[float]]) -> np.ndarray:
    return np.array([tuple(v) for v in vs], dtype=float)
