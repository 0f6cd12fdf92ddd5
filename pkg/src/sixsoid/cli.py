"""Command-line front end.

Exit codes: 0 success, 1 bad input (domain or format error), 2 numerical
convergence or validation failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import deployment as dep
from .cross_section import area_only3_slice, area_sixsoid_slice, sixsoid_profile
from .errors import ConvergenceError, DomainError
from .integrator import QuadratureConfig, kcovered_volume_profile, only3_volume, sixsoid_volume
from .oracle import SamplePlan, sample_slice_area
from .validation import run_validation

EXIT_OK, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2


def _emit(payload, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(payload, out, indent=2, default=float)
        out.write("\n")
        return
    rows = payload if isinstance(payload, list) else [payload]
    flat = [{k: v for k, v in r.items() if not isinstance(v, (list, dict))} for r in rows]
    w = csv.DictWriter(out, fieldnames=list(flat[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(flat)


def _volume_payload(quantity, R, res) -> dict:
    return {
        "quantity": quantity,
        "radius": R,
        "value": res.value,
        "estimated_error": res.estimated_error,
        "per_unit_R3": res.value / R**3,
        "sampled": res.sampled,
        "pieces": [{"interval": list(iv), "value": v} for iv, v in res.piece_contributions],
        "notes": res.notes,
    }


def cmd_volume(args, out) -> int:
    cfg = QuadratureConfig(abs_tolerance=args.tolerance)
    R = args.radius
    if not R > 0:
        raise DomainError(f"--radius must be positive, got {R}")
    try:
        if args.quantity == "sixsoid":
            payload = _volume_payload("sixsoid", R, sixsoid_volume(R, cfg))
        elif args.quantity == "only3":
            res = only3_volume(R, cfg)
            payload = _volume_payload("only3", R, res)
            payload["at_least4"] = R**3 - res.value
            payload["at_least4_per_unit_R3"] = 1 - res.value / R**3
        else:
            prof = kcovered_volume_profile(R, cfg)
            payload = [
                {"k": k, "radius": R, "value": v.value, "estimated_error": v.estimated_error, "per_unit_R3": v.value / R**3}
                for k, v in prof.items()
            ]
    except ConvergenceError as e:
        _emit(
            {"quantity": args.quantity, "radius": R, "error": str(e), "best_estimate": e.best_estimate,
             "estimated_error": e.estimated_error},
            args.format,
            out,
        )
        return EXIT_NUMERIC
    _emit(payload, args.format, out)
    return EXIT_OK


def cmd_slice(args, out) -> int:
    R, x, k = args.radius, args.x, args.k
    if not (1 <= k <= 6):
        raise DomainError(f"--k must be in 1..6, got {k}")
    cov = sample_slice_area(x, R, SamplePlan(args.samples, args.seed))
    sampled, se = cov.at_least(k), cov.at_least_error(k)
    payload = {"radius": R, "x": x, "k": k, "sampled": sampled, "standard_error": se, "n_samples": args.samples}
    if k == 6:
        a = area_sixsoid_slice(x, R)
        payload["analytic"] = a
        payload["z_score"] = (a - sampled) / se if se > 0 else 0.0
    _emit(payload, args.format, out)
    return EXIT_OK


def cmd_plan(args, out) -> int:
    foi = dep.load_foi(args.foi)
    if args.plan:
        plan = dep.load_plan(args.plan)
    else:
        plan = dep.enumerate_sensors(foi)
    if args.out:
        Path(args.out).write_text(json.dumps(plan.to_json()) + "\n")
    sp = SamplePlan(args.samples, args.seed)
    full = dep.coverage_stats(plan, foi, sp)
    own = dep.coverage_stats(plan, foi, sp, own_only=True)
    formula = dep.sensor_budget_formula(foi.volume, plan.radius)
    payload = {
        "cells": len(foi.occupied),
        "cell_size": foi.cell_size,
        "sensor_count": len(plan),
        "formula_count": formula,
        "boundary_gap": len(plan) - formula,
        "coverage_full_plan": full.to_dict(),
        "coverage_own_six": own.to_dict(),
    }
    if args.format == "csv":
        payload = {k: v for k, v in payload.items() if not isinstance(v, dict)}
        payload["full_at_least3"] = full.at_least(3)
        payload["full_at_least4"] = full.at_least(4)
        payload["full_at_least6"] = full.at_least(6)
    _emit(payload, args.format, out)
    return EXIT_OK


def _parse_list(text: str, typ=float):
    try:
        return [typ(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise DomainError(f"could not parse list {text!r}") from None


def cmd_tables(args, out) -> int:
    if args.which == "volume":
        radii = _parse_list(args.radii) if args.radii else [20, 25, 30, 35, 40, 45, 50]
        rows = dep.volume_table(radii)
        if args.format == "csv":
            dep.write_volume_csv(rows, out)
        else:
            _emit([{"r": r.r, "reuleaux_volume": r.reuleaux_volume, "sixsoid_volume": r.sixsoid_volume} for r in rows],
                  "json", out)
        return EXIT_OK
    r = args.r if args.r is not None else 25.0
    if args.kmax < args.kmin:
        raise DomainError(f"--kmax {args.kmax} below --kmin {args.kmin}")
    rows = dep.density_table(r, range(args.kmin, args.kmax + 1))
    if args.format == "csv":
        dep.write_density_csv(rows, out)
    else:
        _emit([{"k": x.k, "r": x.r, "reuleaux_density": x.reuleaux_density, "sixsoid_density": x.sixsoid_density}
               for x in rows], "json", out)
    return EXIT_OK


def cmd_validate(args, out) -> int:
    if not args.radius > 0:
        raise DomainError(f"--radius must be positive, got {args.radius}")
    rep = run_validation(args.radius, args.samples, args.seed, args.slice_samples, args.inject_fault)
    if args.format == "json":
        _emit(rep.to_dict(), "json", out)
    else:
        for c in rep.checks:
            out.write(c.line() + "\n")
        out.write(("PASS" if rep.passed else "FAIL") + "\n")
    return EXIT_OK if rep.passed else EXIT_NUMERIC


def cmd_profile(args, out) -> int:
    R, n = args.radius, args.points
    if n < 2:
        raise DomainError("--points must be at least 2")
    upper = R if args.quantity == "sixsoid" else R / 2
    fn = sixsoid_profile(R) if args.quantity == "sixsoid" else (lambda x: area_only3_slice(x, R))
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["x", "area"])
    for i in range(n):
        x = upper * i / (n - 1)
        w.writerow([repr(x), repr(fn(x))])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sixsoid", description="Six-sphere cube k-coverage geometry.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("volume", help="six-covered, exactly-three-covered or per-k volumes")
    v.add_argument("--radius", type=float, default=1.0, help="cube side R (= sensing radius)")
    v.add_argument("--quantity", choices=["sixsoid", "only3", "kprofile"], default="sixsoid")
    v.add_argument("--tolerance", type=float, default=None, help="absolute quadrature tolerance in units of R^3")
    v.add_argument("--format", choices=["json", "csv"], default="json")
    v.set_defaults(func=cmd_volume)

    s = sub.add_parser("slice", help="slice area at depth x, analytic and sampled")
    s.add_argument("--radius", type=float, default=1.0)
    s.add_argument("--x", type=float, required=True)
    s.add_argument("--k", type=int, default=6)
    s.add_argument("--samples", type=int, default=10**6)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.set_defaults(func=cmd_slice)

    pl = sub.add_parser("plan", help="face-center deployment for a polycubical FoI")
    pl.add_argument("--foi", required=True, help="FoI JSON: {cell_size, cells} or {cell_size, dims}")
    pl.add_argument("--out", help="write the plan JSON here")
    pl.add_argument("--plan", help="re-check coverage of an existing plan JSON instead of enumerating")
    pl.add_argument("--samples", type=int, default=10**6)
    pl.add_argument("--seed", type=int, default=0)
    pl.add_argument("--format", choices=["json", "csv"], default="json")
    pl.set_defaults(func=cmd_plan)

    t = sub.add_parser("tables", help="volume and density comparison tables")
    t.add_argument("--which", choices=["volume", "density"], required=True)
    t.add_argument("--radii", help="comma-separated radii for the volume table")
    t.add_argument("--r", type=float, help="sensing radius for the density table (default 25)")
    t.add_argument("--kmin", type=int, default=4)
    t.add_argument("--kmax", type=int, default=8)
    t.add_argument("--format", choices=["json", "csv"], default="csv")
    t.set_defaults(func=cmd_tables)

    va = sub.add_parser("validate", help="run the analytic-vs-oracle consistency suite")
    va.add_argument("--radius", type=float, default=1.0)
    va.add_argument("--samples", type=int, default=10**7, help="3D Monte Carlo samples")
    va.add_argument("--slice-samples", type=int, default=10**6, help="2D samples per slice")
    va.add_argument("--seed", type=int, default=0)
    va.add_argument("--inject-fault", choices=["statement-chord"], default=None)
    va.add_argument("--format", choices=["json", "text"], default="text")
    va.set_defaults(func=cmd_validate)

    pr = sub.add_parser("profile", help="CSV of (x, area) for plotting")
    pr.add_argument("--radius", type=float, default=1.0)
    pr.add_argument("--quantity", choices=["sixsoid", "only3"], default="sixsoid")
    pr.add_argument("--points", type=int, default=201)
    pr.set_defaults(func=cmd_profile)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
