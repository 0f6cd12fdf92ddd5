import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sixsoid.errors import DomainError
from sixsoid.geometry import (
    ArrangementMode,
    CubeCell,
    SensorArrangement,
    Sphere,
    Vec3,
    apply_about,
    coverage_count,
    coverage_counts,
    cube_symmetries,
    face_centers,
    sixsoid_contains,
    transform_arrangement,
    unit_cell,
)

coord = st.floats(-0.5, 1.5, allow_nan=False)


class TestTypes:
    def test_vec3_rejects_non_finite(self):
        with pytest.raises(DomainError):
            Vec3(0.0, math.inf, 0.0)
        with pytest.raises(DomainError):
            Vec3(math.nan, 0.0, 0.0)

    def test_sphere_and_cell_need_positive_size(self):
        with pytest.raises(DomainError):
            Sphere(Vec3(0, 0, 0), 0.0)
        with pytest.raises(DomainError):
            CubeCell(Vec3(0, 0, 0), -1.0)

    def test_empty_arrangement(self):
        with pytest.raises(DomainError):
            SensorArrangement(())


class TestFaceCenters:
    def test_unit_cube(self):
        got = {tuple(v) for v in face_centers(unit_cell())}
        assert got == {(0.5, 0.5, 0), (0.5, 0.5, 1), (0.5, 0, 0.5), (0.5, 1, 0.5), (0, 0.5, 0.5), (1, 0.5, 0.5)}

    def test_translated(self):
        got = {tuple(v) for v in face_centers(CubeCell(Vec3(1, 2, 3), 2.0))}
        assert (2, 3, 3) in got and (2, 3, 5) in got
        assert len(got) == 6

    @given(coord, coord, coord, st.floats(0.01, 100))
    def test_half_side_from_center(self, x, y, z, side):
        cell = CubeCell(Vec3(x, y, z), side)
        for c in face_centers(cell):
            assert (c - cell.center).norm() == pytest.approx(side / 2, rel=1e-12)


class TestCoverageCount:
    arr = SensorArrangement.single_cube(unit_cell())

    def test_center_six(self):
        assert coverage_count(Vec3(0.5, 0.5, 0.5), self.arr) == 6

    def test_corner_three(self):
        # 1/sqrt(2) to the three adjacent faces, sqrt(1.5) > 1 to the others
        assert coverage_count(Vec3(0, 0, 0), self.arr) == 3

    def test_far_point(self):
        assert coverage_count(Vec3(10, 10, 10), self.arr) == 0

    def test_sixsoid_contains(self):
        cell = unit_cell()
        assert sixsoid_contains(Vec3(0.5, 0.5, 0.5), cell)
        assert not sixsoid_contains(Vec3(0, 0, 0), cell)
        # opposite face center at distance exactly R: closed balls
        assert sixsoid_contains(Vec3(0.5, 0.5, 0.0), cell)

    def test_vectorized_matches_scalar(self):
        rng = np.random.default_rng(3)
        pts = rng.uniform(-0.2, 1.2, (500, 3))
        fast = coverage_counts(pts, self.arr.centers_array(), self.arr.radii_array())
        slow = [coverage_count(Vec3(*p), self.arr) for p in pts]
        np.testing.assert_array_equal(fast, slow)

    @settings(max_examples=60)
    @given(coord, coord, coord)
    def test_octahedral_invariance(self, x, y, z):
        cell = unit_cell()
        pivot = cell.center
        p = Vec3(x, y, z)
        base = coverage_count(p, self.arr)
        for m in cube_symmetries():
            moved = transform_arrangement(self.arr, m, pivot)
            assert coverage_count(apply_about(p, m, pivot), moved) == base

    def test_48_symmetries(self):
        mats = cube_symmetries()
        assert len({m.tobytes() for m in mats}) == 48

    @given(coord, coord, coord, coord, coord, coord, st.floats(0.1, 2))
    def test_adding_sphere_never_decreases(self, x, y, z, a, b, c, r):
        p = Vec3(x, y, z)
        more = self.arr.with_sphere(Sphere(Vec3(a, b, c), r))
        assert coverage_count(p, more) >= coverage_count(p, self.arr)

    def test_dense_cube_is_three_covered(self):
        g = np.linspace(0, 1, 61)
        pts = np.array(list(itertools.product(g, g, g)))
        counts = coverage_counts(pts, self.arr.centers_array(), 1.0)
        assert counts.min() == 3


class TestTilingNeighborhood:
    def test_contains_own_spheres_first(self):
        cell = CubeCell(Vec3(2, -1, 0.5), 1.5)
        arr = SensorArrangement.tiling_neighborhood(cell)
        assert arr.mode is ArrangementMode.TILING_NEIGHBORHOOD
        own = SensorArrangement.single_cube(cell)
        assert arr.spheres[:6] == own.spheres

    def test_neighbor_selection(self):
        cell = unit_cell()
        arr = SensorArrangement.tiling_neighborhood(cell)
        centers = [s.center for s in arr.spheres]
        assert len(set(centers)) == len(centers)
        for c in centers[6:]:
            assert cell.distance_to_box(c) < 1.0
        # a side face of the +x neighbor sits half a cell off the box
        assert Vec3(1.5, 0.0, 0.5) in centers
        # the far face of the +x neighbor is exactly R away: excluded
        assert Vec3(2.0, 0.5, 0.5) not in centers

    def test_neighborhood_count(self):
        # face centers of the 3x3x3 block closer than R to the unit box
        pts = set()
        for i, j, k in itertools.product(range(-1, 2), repeat=3):
            for axis in range(3):
                for off in (0, 1):
                    c = [i + 0.5, j + 0.5, k + 0.5]
                    c[axis] = (i, j, k)[axis] + off
                    d = math.sqrt(sum(max(-v, 0, v - 1) ** 2 for v in c))
                    if d < 1:
                        pts.add(tuple(c))
        arr = SensorArrangement.tiling_neighborhood(unit_cell())
        assert len(arr.spheres) == len(pts)

    def test_dominates_single_cube(self):
        rng = np.random.default_rng(4)
        pts = rng.random((20000, 3))
        single = SensorArrangement.single_cube(unit_cell())
        tiled = SensorArrangement.tiling_neighborhood(unit_cell())
        a = coverage_counts(pts, single.centers_array(), 1.0)
        b = coverage_counts(pts, tiled.centers_array(), 1.0)
        assert np.all(b >= a)
