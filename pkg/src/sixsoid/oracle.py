"""Seeded Monte Carlo estimates of k-coverage, in the cube and in one slice.

Each of ``stream_count`` substreams is a PCG64 generator seeded from
``SeedSequence(seed, spawn_key=(s,))``, so substreams never alias and the
tallies do not depend on how many threads run them.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError
from .geometry import ArrangementMode, SensorArrangement, coverage_counts, unit_cell
from .samplers import MAX_K, SliceCoverage, check_depth, slice_circles

CHUNK = 1 << 20


@dataclass(frozen=True)
class SamplePlan:
    n_samples: int
    seed: int = 0
    stream_count: int = 1

    def __post_init__(self):
        if not (isinstance(self.n_samples, (int, np.integer)) and self.n_samples > 0):
            raise DomainError(f"n_samples must be a positive integer, got {self.n_samples!r}")
        if not (0 <= self.seed < 2**64):
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.stream_count < 1:
            raise DomainError("stream_count must be at least 1")

    def stream_sizes(self) -> list[int]:
        q, r = divmod(self.n_samples, self.stream_count)
        return [q + (1 if s < r else 0) for s in range(self.stream_count)]

    def generator(self, stream: int) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(stream,))
        return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class CoverageReport:
    """Tallies of points by coverage count, with normal-approximation errors."""

    counts: tuple[int, ...]
    n_samples: int
    seed: int
    stream_count: int
    mode: str

    @property
    def max_k(self) -> int:
        return len(self.counts) - 1

    def exact_fractions(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.n_samples

    def at_least_fractions(self) -> np.ndarray:
        return np.cumsum(self.exact_fractions()[::-1])[::-1]

    def exactly(self, k: int) -> float:
        return float(self.exact_fractions()[k]) if k <= self.max_k else 0.0

    def at_least(self, k: int) -> float:
        if k <= 0:
            return 1.0
        return float(self.at_least_fractions()[k]) if k <= self.max_k else 0.0

    def standard_error(self, p: float) -> float:
        return math.sqrt(max(p * (1 - p), 0.0) / self.n_samples)

    def at_least_error(self, k: int) -> float:
        return self.standard_error(self.at_least(k))

    def exactly_error(self, k: int) -> float:
        return self.standard_error(self.exactly(k))

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "stream_count": self.stream_count,
            "counts": list(self.counts),
            "exactly": [self.exactly(k) for k in range(self.max_k + 1)],
            "at_least": [self.at_least(k) for k in range(self.max_k + 1)],
            "at_least_se": [self.at_least_error(k) for k in range(self.max_k + 1)],
        }


def tally(
    plan: SamplePlan,
    draw: Callable[[np.random.Generator, int], np.ndarray],
    count: Callable[[np.ndarray], np.ndarray],
    workers: int | None = None,
    minlength: int = MAX_K + 1,
) -> np.ndarray:
    """Histogram of ``count(draw(rng, m))`` over all substreams.

    Streams are processed independently and merged in stream order.
    """

    def run(stream: int) -> np.ndarray:
        rng = plan.generator(stream)
        hist = np.zeros(minlength, dtype=np.int64)
        left = plan.stream_sizes()[stream]
        while left > 0:
            m = min(CHUNK, left)
            c = count(draw(rng, m))
            h = np.bincount(c, minlength=minlength)
            if len(h) > len(hist):
                hist = np.pad(hist, (0, len(h) - len(hist)))
            hist[: len(h)] += h
            left -= m
        return hist

    streams = range(plan.stream_count)
    if workers and workers > 1 and plan.stream_count > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(run, streams))
    else:
        parts = [run(s) for s in streams]
    width = max(len(p) for p in parts)
    total = np.zeros(width, dtype=np.int64)
    for p in parts:
        total[: len(p)] += p
    return total


def sample_coverage_cube(
    R: float,
    plan: SamplePlan,
    mode: ArrangementMode | str = ArrangementMode.SINGLE_CUBE,
    workers: int | None = None,
) -> CoverageReport:
    """Coverage counts of uniform points in ``[0, R]^3``."""
    if not (R > 0 and math.isfinite(R)):
        raise DomainError(f"cell side R must be positive, got {R}")
    arr = SensorArrangement.for_cell(unit_cell(R), mode)
    centers, radii = arr.centers_array(), arr.radii_array()
    hist = tally(
        plan,
        lambda rng, m: rng.random((m, 3)) * R,
        lambda pts: coverage_counts(pts, centers, radii),
        workers,
    )
    return CoverageReport(tuple(int(c) for c in hist), plan.n_samples, plan.seed, plan.stream_count, arr.mode.value)


def sample_slice_area(x: float, R: float, plan: SamplePlan, workers: int | None = None) -> SliceCoverage:
    """Per-k areas of the slice at depth ``x`` from uniform points in ``[0, R]^2``."""
    check_depth(x, R)
    centers, radii = slice_circles(x, R)
    hist = tally(
        plan,
        lambda rng, m: rng.random((m, 2)) * R,
        lambda pts: coverage_counts(pts, centers, radii),
        workers,
    )
    n = plan.n_samples
    p = hist[: MAX_K + 1] / n
    at_least = np.cumsum(p[::-1])[::-1]
    area = R * R
    return SliceCoverage(
        x=x,
        R=R,
        exact=p * area,
        exact_se=np.sqrt(p * (1 - p) / n) * area,
        at_least_se=np.sqrt(np.clip(at_least * (1 - at_least), 0, None) / n) * area,
        resolution=R / math.sqrt(n),
        method=f"mc{n}",
        n_samples=n,
    )


@dataclass(frozen=True)
class MonteCarloSliceSampler:
    """Slice sampler backed by :func:`sample_slice_area`, usable wherever a grid sampler is."""

    plan: SamplePlan

    def coverage(self, x: float, R: float) -> SliceCoverage:
        return sample_slice_area(x, R, self.plan)
