"""Volumes from slice profiles.

Closed-form pieces go through adaptive quadrature split at every analytic
breakpoint. Pieces that are only known through a slice sampler are
integrated with a fixed Gauss-Legendre rule, and their sampling error is
carried into the result.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate as _spi

from .cross_section import (
    DEFAULT_SAMPLER,
    default_only3_profile,
    sixsoid_profile,
    transition_points,
    unit_slice_coverage,
)
from .errors import ConvergenceError, DomainError


@dataclass(frozen=True)
class QuadratureConfig:
    """``abs_tolerance`` is in units of ``R^3``; ``None`` means 1e-8."""

    abs_tolerance: float | None = None
    max_subdivisions: int = 2**20
    rule: str = "adaptive-composite"

    def __post_init__(self):
        if self.abs_tolerance is not None and not self.abs_tolerance > 0:
            raise DomainError(f"abs_tolerance must be positive, got {self.abs_tolerance}")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")
        if self.rule != "adaptive-composite":
            raise DomainError(f"unknown quadrature rule {self.rule!r}")

    def tolerance(self, scale: float = 1.0) -> float:
        tol = 1e-8 if self.abs_tolerance is None else self.abs_tolerance
        return tol * scale


@dataclass
class VolumeResult:
    value: float
    estimated_error: float
    piece_contributions: list[tuple[tuple[float, float], float]] = field(default_factory=list)
    sampled: bool = False
    notes: list[str] = field(default_factory=list)

    def scaled(self, c: float) -> "VolumeResult":
        """The same result with lengths multiplied by ``c``."""
        c3 = c**3
        return VolumeResult(
            self.value * c3,
            self.estimated_error * c3,
            [((a * c, b * c), v * c3) for (a, b), v in self.piece_contributions],
            self.sampled,
            list(self.notes),
        )


def _split(a: float, b: float, breakpoints: Sequence[float]) -> list[float]:
    inner = sorted({p for p in breakpoints if a < p < b})
    return [a, *inner, b]


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
    breakpoints: Sequence[float] = (),
) -> VolumeResult:
    """Adaptive quadrature of ``f`` over ``[a, b]``, split at ``breakpoints``.

    Each sub-interval is handed to QUADPACK's adaptive Gauss-Kronrod
    integrator with an equal share of the absolute tolerance. Contributions
    are summed in interval order.
    """
    cfg = cfg or QuadratureConfig()
    if not a <= b:
        raise DomainError(f"integration bounds out of order: a={a} > b={b}")
    edges = _split(a, b, breakpoints)
    n = len(edges) - 1
    tol = cfg.tolerance()
    pieces, errors, failures = [], [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if lo == hi:
            pieces.append(((lo, hi), 0.0))
            errors.append(0.0)
            continue
        out = _spi.quad(f, lo, hi, epsabs=tol / n, epsrel=0.0, limit=cfg.max_subdivisions, full_output=1)
        value, err = out[0], out[1]
        if not math.isfinite(value):
            raise DomainError(f"integrand not finite on [{lo}, {hi}]")
        if len(out) > 3 or err > tol / n:
            failures.append(f"[{lo:.6g}, {hi:.6g}]: {out[3] if len(out) > 3 else 'error above tolerance'}")
        pieces.append(((lo, hi), value))
        errors.append(err)
    total = math.fsum(v for _, v in pieces)
    total_err = math.fsum(errors)
    if failures:
        raise ConvergenceError("quadrature did not converge on " + "; ".join(failures), total, total_err)
    return VolumeResult(total, total_err, pieces)


def gauss_legendre(
    g: Callable[[float], tuple[float, float]], a: float, b: float, nodes: int = 8, check_nodes: int = 4
) -> tuple[float, float]:
    """Gauss-Legendre integral of a sampled integrand ``g(x) -> (value, se)``.

    The error is the weighted sum of per-node sampling errors plus the
    difference against a coarser rule, which bounds the rule error on a
    smooth piece.
    """
    if a == b:
        return 0.0, 0.0

    def rule(m):
        t, w = np.polynomial.legendre.leggauss(m)
        half, mid = (b - a) / 2, (a + b) / 2
        vals = [g(half * ti + mid) for ti in t]
        est = half * math.fsum(wi * v for wi, (v, _) in zip(w, vals))
        sampling = half * math.fsum(wi * se for wi, (_, se) in zip(w, vals))
        return est, sampling

    fine, sampling = rule(nodes)
    coarse, _ = rule(check_nodes)
    return fine, sampling + abs(fine - coarse)


def _check_R(R: float) -> None:
    if not (R > 0 and math.isfinite(R)):
        raise DomainError(f"cell side R must be positive, got {R}")


@functools.lru_cache(maxsize=16)
def _unit_sixsoid(cfg: QuadratureConfig, symmetric: bool) -> VolumeResult:
    prof = sixsoid_profile(1.0)
    if symmetric:
        half = integrate(prof, 0.0, 0.5, cfg, prof.breakpoints)
        return VolumeResult(2 * half.value, 2 * half.estimated_error, half.piece_contributions)
    return integrate(prof, 0.0, 1.0, cfg, prof.full_breakpoints())


def sixsoid_volume(R: float, cfg: QuadratureConfig | None = None, symmetric: bool = True) -> VolumeResult:
    """Volume of the six-covered solid inside a cube of side ``R``.

    Twice the integral of the slice area over ``[0, R/2]``; pass
    ``symmetric=False`` to integrate the whole ``[0, R]`` instead.
    Contributions listed are those of the integrated range.
    """
    _check_R(R)
    return _unit_sixsoid(cfg or QuadratureConfig(), symmetric).scaled(R)


def sixsoid_volume_constant() -> float:
    """Six-covered volume per unit ``R^3``."""
    return sixsoid_volume(1.0).value


@functools.lru_cache(maxsize=16)
def _unit_only3(cfg: QuadratureConfig, sampler, nodes: int) -> VolumeResult:
    profile = default_only3_profile(sampler)
    tp = transition_points(1.0)
    pieces, errors, notes = [], [], []
    sampled = False
    for br in profile.branches:
        if br.uses_oracle:
            sampled = True
            for lo, hi in zip(*_pairs(_split(br.lo, br.hi, tp.all_breakpoints()))):
                v, e = gauss_legendre(profile.evaluate, lo, hi, nodes)
                pieces.append(((lo, hi), v))
                errors.append(e)
        else:
            res = integrate(lambda x, f=br.formula: f(x, 1.0), br.lo, br.hi, cfg)
            pieces.append(((br.lo, br.hi), res.value))
            errors.append(res.estimated_error)
    notes.extend("demoted to sampler: " + d for d in profile.discrepancies())
    half = math.fsum(v for _, v in pieces)
    return VolumeResult(2 * half, 2 * math.fsum(errors), pieces, sampled, notes)


def _pairs(edges):
    return edges[:-1], edges[1:]


def only3_volume(
    R: float, cfg: QuadratureConfig | None = None, sampler=None, nodes: int = 8
) -> VolumeResult:
    """Volume inside the cube covered by exactly three of its six spheres.

    Branches without a validated closed form are integrated from sampled
    slices, so the error estimate includes sampling error.
    """
    _check_R(R)
    return _unit_only3(cfg or QuadratureConfig(), sampler or DEFAULT_SAMPLER, nodes).scaled(R)


def at_least4_volume(R: float, cfg: QuadratureConfig | None = None, sampler=None) -> VolumeResult:
    """Cube volume minus the exactly-three-covered volume.

    Valid because every point of the cube is at least three-covered.
    """
    v3 = only3_volume(R, cfg, sampler)
    return VolumeResult(R**3 - v3.value, v3.estimated_error, [], v3.sampled, list(v3.notes))


@functools.lru_cache(maxsize=8)
def _unit_kprofile(sampler, nodes: int) -> dict[int, VolumeResult]:
    tp = transition_points(1.0)
    edges = [0.0, *tp.all_breakpoints()]
    edges = sorted(set(e for e in edges if e <= 0.5) | {0.5})
    per_k = {k: ([], []) for k in range(1, 7)}
    for lo, hi in zip(edges[:-1], edges[1:]):
        for k in range(1, 7):
            v, e = gauss_legendre(
                lambda x, k=k: _at_least(sampler, x, k), lo, hi, nodes
            )
            per_k[k][0].append(((lo, hi), v))
            per_k[k][1].append(e)
    out = {}
    for k, (pieces, errors) in per_k.items():
        half = math.fsum(v for _, v in pieces)
        out[k] = VolumeResult(2 * half, 2 * math.fsum(errors), pieces, sampled=True)
    return out


def _at_least(sampler, x: float, k: int) -> tuple[float, float]:
    cov = unit_slice_coverage(sampler, x)
    return cov.at_least(k), cov.at_least_error(k)


def kcovered_volume_profile(
    R: float, cfg: QuadratureConfig | None = None, resolution: int | None = None, sampler=None, nodes: int = 8
) -> dict[int, VolumeResult]:
    """Volume covered by at least ``k`` of the cube's own six spheres, ``k = 1..6``.

    Slice areas come from ``sampler`` (a grid at ``resolution`` if given).
    ``cfg`` is accepted for interface symmetry; sampled slices are integrated
    with a fixed rule rather than adaptively.
    """
    _check_R(R)
    if sampler is None:
        from .samplers import GridSampler

        sampler = GridSampler(resolution) if resolution else DEFAULT_SAMPLER
    unit = _unit_kprofile(sampler, nodes)
    return {k: v.scaled(R) for k, v in unit.items()}
