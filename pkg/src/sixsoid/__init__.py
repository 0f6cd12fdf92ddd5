"""k-coverage geometry of six sensing spheres on the face centers of a cube."""

from .cross_section import (
    area_at_least_k_slice,
    area_only3_slice,
    area_sixsoid_slice,
    chord_gh,
    slice_radii,
    transition_points,
)
from .deployment import (
    FoiGrid,
    coverage_stats,
    enumerate_sensors,
    sensor_budget_formula,
    spatial_density,
    volume_table,
)
from .errors import ConvergenceError, DomainError, FoiFormatError
from .geometry import CubeCell, SensorArrangement, Sphere, Vec3, coverage_count, face_centers, sixsoid_contains
from .integrator import QuadratureConfig, VolumeResult, integrate, kcovered_volume_profile, only3_volume, sixsoid_volume
from .oracle import CoverageReport, SamplePlan, sample_coverage_cube, sample_slice_area

__version__ = "0.1.0"
