"""Analytic-vs-oracle consistency checks behind ``sixsoid validate``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cross_section import chord_from_statement, chord_gh, sixsoid_profile, transition_points
from .integrator import only3_volume, sixsoid_volume
from .oracle import SamplePlan, sample_coverage_cube, sample_slice_area

# Values quoted in the literature for unit side, shown next to ours for reference.
QUOTED_SIXSOID = 0.685
QUOTED_AT_LEAST4 = 0.952
QUOTED_ONLY3 = 0.048

FAULTS = {"statement-chord": chord_from_statement}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str
    values: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


@dataclass
class ValidationReport:
    R: float
    seed: int
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "R": self.R,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail, **c.values} for c in self.checks
            ],
        }


def continuity_check(R: float, chord=chord_gh) -> Check:
    prof = sixsoid_profile(R, chord)
    worst = 0.0
    try:
        for _, left, right in prof.jumps():
            worst = max(worst, abs(left - right) / max(abs(left), abs(right)))
        gh = chord(transition_points(R).l1, R)
    except ValueError as e:
        return Check("continuity", False, f"evaluation failed: {e}")
    ok = worst <= 1e-9 and gh < 1e-9 * R
    return Check(
        "continuity",
        ok,
        f"max relative jump {worst:.2e} (tol 1e-9), chord at l1 {gh:.2e}",
        {"max_relative_jump": worst, "chord_at_l1": gh},
    )


def symmetry_check(R: float, seed: int, n_points: int = 100) -> Check:
    prof = sixsoid_profile(R)
    xs = np.random.default_rng([seed, 1]).uniform(0, R, n_points)
    worst = max(abs(prof(x) - prof(R - x)) / max(prof(x), 1e-300) for x in xs)
    return Check("symmetry", worst <= 1e-12, f"max relative |A(x) - A(R-x)| {worst:.2e} (tol 1e-12)", {"max": worst})


def equivalence_points(R: float, seed: int, n_random: int = 20, with_piece_midpoints: bool = True) -> list[float]:
    """``n_random`` uniform depths in ``(0, R)``, plus the midpoint of every piece."""
    xs = list(np.random.default_rng([seed, 2]).uniform(0, R, n_random))
    if with_piece_midpoints:
        bps = sixsoid_profile(R).full_breakpoints()
        xs += [(a + b) / 2 for a, b in zip(bps[:-1], bps[1:])]
    return [float(x) for x in xs]


def slice_equivalence_check(
    R: float,
    seed: int,
    n_samples: int = 10**6,
    n_random: int = 20,
    chord=chord_gh,
    sigmas: float = 4.0,
    with_piece_midpoints: bool = True,
) -> Check:
    prof = sixsoid_profile(R, chord)
    plan = SamplePlan(n_samples, seed)
    violations, worst_z = [], 0.0
    rows = []
    for x in equivalence_points(R, seed, n_random, with_piece_midpoints):
        cov = sample_slice_area(x, R, plan)
        est, se = cov.at_least(6), cov.at_least_error(6)
        try:
            a = prof(x)
        except ValueError as e:
            violations.append(f"x={x:.6f}: {e}")
            rows.append((x, None, est, se))
            continue
        z = abs(a - est) / se if se > 0 else (0.0 if a == est else math.inf)
        worst_z = max(worst_z, z)
        rows.append((x, a, est, se))
        if z > sigmas:
            violations.append(f"x={x:.6f}: analytic {a:.6f} vs sampled {est:.6f} ({z:.1f} SE)")
    ok = not violations
    detail = f"{len(rows)} slices, max |z| {worst_z:.2f} (tol {sigmas})"
    if violations:
        detail += "; violations: " + "; ".join(violations[:5])
    return Check("slice-equivalence", ok, detail, {"max_z": worst_z, "violations": len(violations)})


def cube_checks(R: float, seed: int, n_samples: int) -> list[Check]:
    rep = sample_coverage_cube(R, SamplePlan(n_samples, seed))
    checks = []
    below3 = sum(rep.counts[:3])
    checks.append(
        Check("full-3-coverage", below3 == 0, f"{below3} of {n_samples} samples below 3-coverage", {"violations": below3})
    )
    v6 = sixsoid_volume(R)
    f6, se6 = rep.at_least(6), rep.at_least_error(6)
    exp6 = v6.value / R**3
    z6 = abs(f6 - exp6) / math.hypot(se6, v6.estimated_error / R**3)
    checks.append(
        Check(
            "six-covered-fraction",
            z6 <= 4,
            f"sampled {f6:.5f} vs integrated {exp6:.5f} ({z6:.2f} SE); quoted {QUOTED_SIXSOID}",
            {"sampled": f6, "integrated": exp6, "quoted": QUOTED_SIXSOID},
        )
    )
    v3 = only3_volume(R)
    f4, se4 = rep.at_least(4), rep.at_least_error(4)
    exp4 = 1 - v3.value / R**3
    z4 = abs(f4 - exp4) / math.hypot(se4, v3.estimated_error / R**3)
    checks.append(
        Check(
            "four-covered-fraction",
            z4 <= 4,
            f"sampled {f4:.5f} vs integrated {exp4:.5f} ({z4:.2f} SE); quoted {QUOTED_AT_LEAST4}",
            {"sampled": f4, "integrated": exp4, "quoted": QUOTED_AT_LEAST4},
        )
    )
    return checks


def run_validation(
    R: float = 1.0,
    n_samples: int = 10**7,
    seed: int = 0,
    slice_samples: int = 10**6,
    fault: str | None = None,
) -> ValidationReport:
    """All consistency checks; ``fault`` swaps in a known-wrong chord expression."""
    chord = FAULTS[fault] if fault else chord_gh
    checks = [
        continuity_check(R, chord),
        symmetry_check(R, seed),
        slice_equivalence_check(R, seed, slice_samples, chord=chord),
        *cube_checks(R, seed, n_samples),
    ]
    return ValidationReport(R, seed, checks)
