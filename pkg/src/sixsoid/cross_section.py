"""Analytic slice areas of the six-sphere cube construction.

Depth ``x`` is measured from the top face along the slicing axis. All
closed forms below are written for ``0 <= x <= R/2`` and extended to
``(R/2, R]`` by reflection.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import DomainError
from .samplers import GridSampler, SliceCoverage, check_depth

_EPS = 1e-12


@dataclass(frozen=True)
class SliceRadii:
    r_top: float
    r_bottom: float
    r_side: float


def slice_radii(x: float, R: float) -> SliceRadii:
    check_depth(x, R)
    return SliceRadii(
        r_top=math.sqrt(max(R * R - x * x, 0.0)),
        r_bottom=math.sqrt(max(2 * R * x - x * x, 0.0)),
        r_side=math.sqrt(0.75 * R * R + R * x - x * x),
    )


@dataclass(frozen=True)
class TransitionPoints:
    """Depths where the slice topology changes, for ``0 <= x <= R/2``.

    ``l1``/``l2`` bound the pieces of the six-covered area; ``l1p``/``l2p``
    those of the exactly-three-covered area. ``bottom_meets_sides`` is where
    the bottom circle first touches the square's sides and
    ``only3_vanishes`` where it swallows the corners.
    """

    R: float
    l1: float
    l2: float
    l1p: float
    l2p: float
    bottom_meets_sides: float
    only3_vanishes: float

    def all_breakpoints(self) -> list[float]:
        pts = {self.l1, self.l2, self.l1p, self.l2p, self.bottom_meets_sides, self.only3_vanishes}
        return sorted(pts)


def transition_points(R: float) -> TransitionPoints:
    if not R > 0:
        raise DomainError(f"cell side R must be positive, got {R}")
    return TransitionPoints(
        R=R,
        l1=R * (3 - math.sqrt(7)) / 4,
        l2=(2 / 3 - math.sqrt(10) / 6) * R,
        l1p=(2 / 3 - math.sqrt(10) / 6) * R,
        l2p=(3 - math.sqrt(5)) * R / 4,
        bottom_meets_sides=(1 - math.sqrt(3) / 2) * R,
        only3_vanishes=(1 - 1 / math.sqrt(2)) * R,
    )


def two_circle_intersection(c1, r1: float, c2, r2: float) -> list[tuple[float, float]]:
    """Intersection points of two circles in the plane (0, 1 or 2 points)."""
    (x1, y1), (x2, y2) = c1, c2
    dx, dy = x2 - x1, y2 - y1
    d = math.hypot(dx, dy)
    if d == 0 or d > r1 + r2 or d < abs(r1 - r2):
        return []
    a = (r1 * r1 - r2 * r2 + d * d) / (2 * d)
    h = math.sqrt(max(r1 * r1 - a * a, 0.0))
    mx, my = x1 + a * dx / d, y1 + a * dy / d
    if h == 0:
        return [(mx, my)]
    ox, oy = -dy * h / d, dx * h / d
    return [(mx + ox, my + oy), (mx - ox, my - oy)]


def chord_gh(x: float, R: float) -> float:
    """Common chord of the bottom circle and one side circle.

    Zero at ``l1`` where the circles are tangent.
    """
    check_depth(x, R)
    arg = 3 * R * x - R * R / 4 - 2 * x * x
    if arg < -_EPS * R * R:
        raise DomainError(f"bottom and side circles do not intersect at x={x}")
    return 2 * math.sqrt(max(arg, 0.0))


def chord_from_statement(x: float, R: float) -> float:
    """The chord expression ``2 sqrt(7R^2/4 + 3Rx - 2x^2)``.

    Kept only as an injectable fault; it is not the geometric chord.
    """
    check_depth(x, R)
    return 2 * math.sqrt(7 * R * R / 4 + 3 * R * x - 2 * x * x)


def _asin(v: float) -> float:
    if v > 1 + 1e-12 or v < -1 - 1e-12:
        raise DomainError(f"arcsin argument {v} outside [-1, 1]")
    return math.asin(min(1.0, max(-1.0, v)))


def circular_segment_area(radius: float, chord: float) -> float:
    """Area of the minor segment cut from a circle by a chord."""
    phi = 2 * _asin(chord / (2 * radius))
    return radius * radius / 2 * (phi - math.sin(phi))


@dataclass(frozen=True)
class Piece:
    lo: float
    hi: float
    fn: Callable[[float], float]
    name: str


@dataclass(frozen=True)
class PiecewiseAreaProfile:
    """A slice-area function on ``[0, R/2]`` made of smooth pieces.

    With ``symmetric`` set, evaluation at ``x > R/2`` reflects to ``R - x``.
    """

    R: float
    pieces: tuple[Piece, ...]
    symmetric: bool = True

    @property
    def breakpoints(self) -> list[float]:
        return [p.lo for p in self.pieces] + [self.pieces[-1].hi]

    def full_breakpoints(self) -> list[float]:
        """Breakpoints over ``[0, R]``, reflected copies included."""
        half = self.breakpoints
        if not self.symmetric:
            return half
        return half + [self.R - b for b in reversed(half[:-1])]

    def piece_at(self, x: float) -> Piece:
        for p in self.pieces:
            if x <= p.hi:
                return p
        return self.pieces[-1]

    def __call__(self, x: float) -> float:
        upper = self.R if self.symmetric else self.R / 2
        check_depth(x, self.R, upper)
        if x > self.R / 2:
            x = self.R - x
        return self.piece_at(x).fn(x)

    def jumps(self) -> list[tuple[float, float, float]]:
        """``(breakpoint, left value, right value)`` at each interior breakpoint."""
        out = []
        for left, right in zip(self.pieces[:-1], self.pieces[1:]):
            b = left.hi
            out.append((b, left.fn(b), right.fn(b)))
        return out


def sixsoid_profile(R: float, chord: Callable[[float, float], float] = chord_gh) -> PiecewiseAreaProfile:
    """Six-covered slice area ``A(x)`` as a three-piece profile.

    ``chord`` is injectable so the validation suite can demonstrate that a
    wrong chord expression is caught.
    """
    tp = transition_points(R)

    def disk(x):
        return math.pi * (2 * R * x - x * x)

    def octagon(x):
        # 4 sectors of the bottom circle between chords, plus 4 triangle+cap
        # regions over each chord
        r2 = 2 * R * x - x * x
        r = math.sqrt(r2)
        s2 = 0.75 * R * R + R * x - x * x
        gh = chord(x, R)
        alpha = 2 * _asin(gh / (2 * r))
        theta = math.pi / 2 - alpha
        sector = r2 * theta / 2
        triangle = 0.5 * gh * math.sqrt(max(r2 - gh * gh / 4, 0.0))
        cap = circular_segment_area(math.sqrt(s2), gh)
        return 4 * sector + 4 * (triangle + cap)

    def rounded_square(x):
        # square spanned by the four side-circle corner points, plus 4 caps
        s = math.sqrt(0.75 * R * R + R * x - x * x)
        z = (R + math.sqrt(5 * R * R + 8 * R * x - 8 * x * x)) / 4
        side = 2 * (z - R / 2)
        return side * side + 4 * circular_segment_area(s, side)

    return PiecewiseAreaProfile(
        R=R,
        pieces=(
            Piece(0.0, tp.l1, disk, "disk"),
            Piece(tp.l1, tp.l2, octagon, "octagon"),
            Piece(tp.l2, R / 2, rounded_square, "rounded-square"),
        ),
    )


def area_sixsoid_slice(x: float, R: float) -> float:
    """Area of the six-covered cross-section at depth ``x``."""
    return sixsoid_profile(R)(x)


DEFAULT_SAMPLER = GridSampler(2048)


def slice_coverage(x: float, R: float, sampler=None) -> SliceCoverage:
    """Per-k slice areas from a sampler (grid by default)."""
    sampler = DEFAULT_SAMPLER if sampler is None else sampler
    check_depth(x, R)
    return sampler.coverage(x, R)


def area_at_least_k_slice(x: float, R: float, k: int, sampler=None) -> float:
    """Area of the slice square covered by at least ``k`` of the six circles."""
    if not (isinstance(k, int) and 1 <= k <= 6):
        raise DomainError(f"k must be an integer in 1..6, got {k!r}")
    return slice_coverage(x, R, sampler).at_least(k)


# --- exactly-three-covered area -------------------------------------------


def only3_low_formula(x: float, R: float) -> float:
    """Closed form offered for ``0 <= x <= l1p``.

    The undefined radius inside ``theta = asin(z / r)`` is read as the side
    radius ``s``. The expression does not match the geometry and is demoted
    to the sampler by validation; it is kept so the demotion stays visible.
    """
    s2 = R * x - x * x + 0.75 * R * R
    z = (R + math.sqrt(5 * R * R - 8 * x * x + 8 * R * x)) / 4
    ratio = z / math.sqrt(s2)
    if ratio > 1:
        return math.nan
    theta = math.asin(ratio)
    theta_p = math.asin(math.sqrt(3) / 2)
    return 8 * ((R * R - z * z) / 2 - (s2 * theta / 2 - z * (z - R / 2) / 2)) + 8 * (
        s2 * theta_p / 2 - math.sqrt(3) * R * R / 4
    )


def only3_high_formula(x: float, R: float) -> float:
    """Square area minus the bottom disk clipped to the square.

    Valid while the bottom circle crosses the square's sides but not its
    corners, ``R/2 <= r_bottom <= R/sqrt(2)``.
    """
    r2 = 2 * R * x - x * x
    r = math.sqrt(r2)
    return (
        R * R
        + 4 * r2 * math.acos(min(1.0, R / (2 * r)))
        - 2 * R * math.sqrt(max(r2 - R * R / 4, 0.0))
        - math.pi * r2
    )


def _zero(x: float, R: float) -> float:
    return 0.0


@dataclass
class Only3Branch:
    name: str
    lo: float
    hi: float
    formula: Callable[[float, float], float] | None
    checks: list[tuple[float, float, float, float]] = field(default_factory=list)
    demoted: bool = False

    @property
    def uses_oracle(self) -> bool:
        return self.formula is None or self.demoted

    @property
    def max_discrepancy(self) -> float:
        """Largest ``|analytic - oracle|`` seen at validation, in units of R^2."""
        if not self.checks:
            return 0.0
        return max(abs(a - o) if math.isfinite(a) else math.inf for _, a, o, _ in self.checks)


@dataclass
class Only3Profile:
    """Exactly-three-covered slice area at unit side, with branch validation.

    Values at other ``R`` follow by ``R^2`` scaling.
    """

    sampler: object
    branches: list[Only3Branch]

    def branch_at(self, x: float) -> Only3Branch:
        for b in self.branches:
            if x <= b.hi:
                return b
        return self.branches[-1]

    def evaluate(self, x: float) -> tuple[float, float]:
        """``(area, error)`` at unit side; error is zero for analytic branches."""
        b = self.branch_at(x)
        if b.uses_oracle:
            cov = unit_slice_coverage(self.sampler, x)
            return cov.exactly(3), cov.exactly_error(3)
        return b.formula(x, 1.0), 0.0

    def discrepancies(self) -> list[str]:
        return [
            f"{b.name} [{b.lo:.6f}, {b.hi:.6f}]: max |analytic - oracle| = {b.max_discrepancy:.3e} R^2"
            for b in self.branches
            if b.demoted
        ]


@functools.lru_cache(maxsize=4096)
def unit_slice_coverage(sampler, x: float) -> SliceCoverage:
    return sampler.coverage(x, 1.0)


VALIDATION_FRACTIONS = (0.1, 0.5, 0.9)
VALIDATION_SIGMAS = 4.0


def build_only3_profile(sampler=None) -> Only3Profile:
    """Assemble the exactly-three-covered profile and validate each closed form.

    A closed form is checked against the sampler at three interior depths of
    its branch; any disagreement beyond four sampler standard errors demotes
    the whole branch to the sampler.
    """
    sampler = DEFAULT_SAMPLER if sampler is None else sampler
    tp = transition_points(1.0)
    branches = [
        Only3Branch("low-closed-form", 0.0, tp.l1p, only3_low_formula),
        Only3Branch("middle", tp.l1p, tp.l2p, None),
        Only3Branch("high-closed-form", tp.l2p, tp.only3_vanishes, only3_high_formula),
        Only3Branch("vanished", tp.only3_vanishes, 0.5, _zero),
    ]
    for b in branches:
        if b.formula is None:
            continue
        for frac in VALIDATION_FRACTIONS:
            x = b.lo + frac * (b.hi - b.lo)
            cov = unit_slice_coverage(sampler, x)
            oracle, se = cov.exactly(3), cov.exactly_error(3)
            analytic = b.formula(x, 1.0)
            b.checks.append((x, analytic, oracle, se))
            if not (math.isfinite(analytic) and abs(analytic - oracle) <= VALIDATION_SIGMAS * se + _EPS):
                b.demoted = True
    return Only3Profile(sampler, branches)


@functools.lru_cache(maxsize=8)
def default_only3_profile(sampler=None) -> Only3Profile:
    return build_only3_profile(sampler)


def only3_slice_estimate(x: float, R: float, sampler=None) -> tuple[float, float]:
    """``(area, error)`` of the exactly-three-covered part of the slice."""
    check_depth(x, R, R / 2)
    profile = default_only3_profile(sampler)
    value, err = profile.evaluate(x / R)
    return value * R * R, err * R * R


def area_only3_slice(x: float, R: float, sampler=None) -> float:
    """Area of the part of the slice covered by exactly three circles."""
    return only3_slice_estimate(x, R, sampler)[0]
