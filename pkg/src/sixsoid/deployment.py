"""Face-center deployment over a polycubical field of interest, and the
Sixsoid vs. Reuleaux-tetrahedron comparisons.

Cell ``(i, j, k)`` of a grid with side ``R`` occupies
``[iR, (i+1)R] x [jR, (j+1)R] x [kR, (k+1)R]``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError, FoiFormatError
from .geometry import Vec3
from .integrator import sixsoid_volume_constant
from .oracle import CoverageReport, SamplePlan, tally

REULEAUX_VOLUME_COEFF = 0.422
REULEAUX_RADIUS_DIVISOR = 1.066

Cell = tuple[int, int, int]


@dataclass(frozen=True)
class FoiGrid:
    cell_size: float
    occupied: frozenset[Cell]

    def __post_init__(self):
        if not (self.cell_size > 0 and math.isfinite(self.cell_size)):
            raise DomainError(f"cell_size must be positive, got {self.cell_size}")
        if not self.occupied:
            raise DomainError("field of interest has no occupied cells")

    @classmethod
    def box(cls, cell_size: float, dims: Sequence[int]) -> "FoiGrid":
        W, H, D = dims
        cells = frozenset((i, j, k) for i in range(W) for j in range(H) for k in range(D))
        return cls(cell_size, cells)

    @classmethod
    def from_cells(cls, cell_size: float, cells: Iterable[Sequence[int]]) -> "FoiGrid":
        return cls(cell_size, frozenset(tuple(int(v) for v in c) for c in cells))

    @property
    def volume(self) -> float:
        return self.cell_size**3 * len(self.occupied)

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.occupied)

    @classmethod
    def from_json(cls, doc) -> "FoiGrid":
        """Parse ``{"cell_size", "cells"}`` or ``{"cell_size", "dims"}``."""
        if not isinstance(doc, dict):
            raise FoiFormatError("<root>", "expected a JSON object")
        if "cell_size" not in doc:
            raise FoiFormatError("cell_size", "missing")
        size = doc["cell_size"]
        if isinstance(size, bool) or not isinstance(size, (int, float)) or not (size > 0 and math.isfinite(size)):
            raise FoiFormatError("cell_size", f"expected a positive number, got {size!r}")
        has_cells, has_dims = "cells" in doc, "dims" in doc
        if has_cells == has_dims:
            raise FoiFormatError("cells", "exactly one of 'cells' or 'dims' is required")
        if has_dims:
            dims = doc["dims"]
            if not (isinstance(dims, list) and len(dims) == 3 and all(_is_int(d) and d > 0 for d in dims)):
                raise FoiFormatError("dims", f"expected three positive integers, got {dims!r}")
            return cls.box(float(size), dims)
        cells = doc["cells"]
        if not isinstance(cells, list) or not cells:
            raise FoiFormatError("cells", "expected a non-empty list of [i, j, k]")
        seen = set()
        for n, c in enumerate(cells):
            if not (isinstance(c, list) and len(c) == 3 and all(_is_int(v) for v in c)):
                raise FoiFormatError(f"cells[{n}]", f"expected three integers, got {c!r}")
            t = tuple(c)
            if t in seen:
                raise FoiFormatError(f"cells[{n}]", f"duplicate cell {c!r}")
            seen.add(t)
        return cls(float(size), frozenset(seen))

    def to_json(self) -> dict:
        return {"cell_size": self.cell_size, "cells": [list(c) for c in self.sorted_cells()]}


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def load_foi(path: str | Path) -> FoiGrid:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FoiFormatError("<root>", f"invalid JSON: {e}") from None
    return FoiGrid.from_json(doc)


# Face centers live on the half-cell lattice; key (a, b, c) sits at (a, b, c) * R / 2.
_FACE_OFFSETS = [
    (0, 1, 1), (2, 1, 1),
    (1, 0, 1), (1, 2, 1),
    (1, 1, 0), (1, 1, 2),
]


def face_keys(cell: Cell) -> list[tuple[int, int, int]]:
    i, j, k = cell
    return [(2 * i + a, 2 * j + b, 2 * k + c) for a, b, c in _FACE_OFFSETS]


@dataclass
class DeploymentPlan:
    """Sensor positions of one deployment, sorted lexicographically."""

    positions: np.ndarray
    radius: float
    foi: FoiGrid | None = field(default=None, repr=False)

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=float).reshape(-1, 3)
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise DomainError(f"sensing radius must be positive, got {self.radius}")

    def __len__(self) -> int:
        return len(self.positions)

    def sensors(self) -> list[Vec3]:
        return [Vec3(*map(float, p)) for p in self.positions]

    def to_json(self) -> dict:
        return {"radius": self.radius, "sensors": self.positions.tolist()}

    @classmethod
    def from_json(cls, doc) -> "DeploymentPlan":
        if not isinstance(doc, dict):
            raise FoiFormatError("<root>", "expected a JSON object")
        r = doc.get("radius")
        if isinstance(r, bool) or not isinstance(r, (int, float)) or not (r > 0 and math.isfinite(r)):
            raise FoiFormatError("radius", f"expected a positive number, got {r!r}")
        sensors = doc.get("sensors")
        if not isinstance(sensors, list) or not sensors:
            raise FoiFormatError("sensors", "expected a non-empty list of [x, y, z]")
        for n, s in enumerate(sensors):
            ok = isinstance(s, list) and len(s) == 3
            ok = ok and all(isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v) for v in s)
            if not ok:
                raise FoiFormatError(f"sensors[{n}]", f"expected three finite numbers, got {s!r}")
        return cls(np.array(sensors, dtype=float), float(r))


def load_plan(path: str | Path) -> DeploymentPlan:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FoiFormatError("<root>", f"invalid JSON: {e}") from None
    return DeploymentPlan.from_json(doc)


def enumerate_sensors(foi: FoiGrid) -> DeploymentPlan:
    """One sensor at every distinct face center of the occupied cells.

    A face shared by two occupied cells carries a single sensor. The
    sensing radius equals the cell side.
    """
    if not isinstance(foi, FoiGrid):
        raise DomainError("enumerate_sensors needs a FoiGrid")
    keys = set()
    for cell in foi.occupied:
        keys.update(face_keys(cell))
    arr = np.array(sorted(keys), dtype=float) * (foi.cell_size / 2)
    return DeploymentPlan(arr, foi.cell_size, foi)


def sensor_budget_formula(V_foi: float, r: float) -> float:
    """Interior sensor count ``3 V / r^3``; boundary faces are not included."""
    if not (V_foi > 0 and r > 0):
        raise DomainError("volume and radius must be positive")
    return 3 * V_foi / r**3


def box_sensor_count(W: int, H: int, D: int) -> int:
    """Closed-form face count of a full ``W x H x D`` box."""
    return (W + 1) * H * D + W * (H + 1) * D + W * H * (D + 1)


def coverage_stats(
    plan: DeploymentPlan,
    foi: FoiGrid,
    sample_plan: SamplePlan,
    cells: Iterable[Cell] | None = None,
    own_only: bool = False,
    workers: int | None = None,
) -> CoverageReport:
    """Coverage counts of uniform points over the occupied cells.

    Every sensor of ``plan`` counts. With ``own_only`` a point counts only
    the six face-center sensors of its own cell, which reproduces the
    single-cube arrangement. ``cells`` restricts sampling to a subset.
    Sampling picks a cell uniformly (all cells have equal volume) and then a
    uniform point inside it.
    """
    region = foi.sorted_cells() if cells is None else sorted({tuple(c) for c in cells})
    missing = [c for c in region if c not in foi.occupied]
    if missing:
        raise DomainError(f"cells not in the field of interest: {missing[:3]}")
    if not region:
        raise DomainError("no cells to sample")
    R = foi.cell_size
    corners = np.array(region, dtype=float) * R

    def draw(rng, m):
        u = rng.random((m, 3)) * R
        if len(region) == 1:
            return np.concatenate([u + corners[0], np.zeros((m, 1))], axis=1)
        idx = rng.integers(0, len(region), m)
        return np.concatenate([u + corners[idx], idx[:, None].astype(float)], axis=1)

    if own_only:
        offsets = np.array(_FACE_OFFSETS, dtype=float) * (R / 2)

        def count(pts):
            xyz, idx = pts[:, :3], pts[:, 3].astype(int)
            base = corners[idx]
            out = np.zeros(len(pts), dtype=np.int16)
            for off in offsets:
                d = xyz - (base + off)
                out += np.einsum("ij,ij->i", d, d) <= R * R
            return out

        mode = "own-six"
    else:
        tree = cKDTree(plan.positions)

        def count(pts):
            return tree.query_ball_point(pts[:, :3], plan.radius, return_length=True).astype(np.int16)

        mode = "full-plan"
    hist = tally(sample_plan, draw, count, workers)
    return CoverageReport(
        tuple(int(c) for c in hist), sample_plan.n_samples, sample_plan.seed, sample_plan.stream_count, mode
    )


def spatial_density(model: str, k: int, r: float) -> float:
    """Sensors per unit volume for full k-coverage: ``k / body volume``."""
    if not (isinstance(k, int) and k >= 1):
        raise DomainError(f"k must be a positive integer, got {k!r}")
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r}")
    if model == "sixsoid":
        return k / sixsoid_body_volume(r)
    if model == "reuleaux":
        return k / reuleaux_volume(r)
    raise DomainError(f"unknown model {model!r}; expected 'sixsoid' or 'reuleaux'")


def sixsoid_body_volume(r: float) -> float:
    return sixsoid_volume_constant() * r**3


def reuleaux_volume(r: float) -> float:
    r0 = r / REULEAUX_RADIUS_DIVISOR
    return REULEAUX_VOLUME_COEFF * r0**3


@dataclass(frozen=True)
class ComparisonRow:
    r: float
    sixsoid_volume: float
    reuleaux_volume: float
    k: int | None = None
    sixsoid_density: float | None = None
    reuleaux_density: float | None = None


def volume_table(radii: Iterable[float]) -> list[ComparisonRow]:
    rows = []
    for r in radii:
        if not r > 0:
            raise DomainError(f"radius must be positive, got {r}")
        rows.append(ComparisonRow(float(r), sixsoid_body_volume(r), reuleaux_volume(r)))
    return rows


def density_table(r: float, ks: Iterable[int]) -> list[ComparisonRow]:
    return [
        ComparisonRow(
            float(r),
            sixsoid_body_volume(r),
            reuleaux_volume(r),
            k,
            spatial_density("sixsoid", k, r),
            spatial_density("reuleaux", k, r),
        )
        for k in ks
    ]


DENSITY_UNIT = 1e-4
VOLUME_HEADER = ["r", "Reuleaux Tetrahedron", "Sixsoid"]
DENSITY_HEADER = ["k", "Reuleaux Tetrahedron", "Sixsoid"]


def write_volume_csv(rows: Sequence[ComparisonRow], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(VOLUME_HEADER)
    for row in rows:
        w.writerow([_g(row.r), _g(row.reuleaux_volume), _g(row.sixsoid_volume)])


def write_density_csv(rows: Sequence[ComparisonRow], out: TextIO) -> None:
    """Densities in units of 1e-4 sensors per unit volume, as tabulated in the literature."""
    w = csv.writer(out, lineterminator="\n")
    w.writerow(DENSITY_HEADER)
    for row in rows:
        w.writerow([row.k, _g(row.reuleaux_density / DENSITY_UNIT), _g(row.sixsoid_density / DENSITY_UNIT)])


def read_csv_rows(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def _g(v: float) -> str:
    return repr(float(v))
