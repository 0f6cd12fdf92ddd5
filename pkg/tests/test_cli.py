import io
import json
import subprocess
import sys

import pytest

from sixsoid.cli import EXIT_DOMAIN, EXIT_NUMERIC, EXIT_OK, main
from sixsoid.deployment import read_csv_rows


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


class TestVolume:
    def test_sixsoid_json(self):
        code, text = run("volume", "--radius", "2")
        doc = json.loads(text)
        assert code == EXIT_OK
        assert doc["per_unit_R3"] == pytest.approx(0.68763678, abs=1e-8)
        assert doc["value"] == pytest.approx(8 * doc["per_unit_R3"])
        assert doc["pieces"] and not doc["sampled"]

    def test_csv(self):
        code, text = run("volume", "--format", "csv")
        (row,) = read_csv_rows(text)
        assert code == EXIT_OK and float(row["value"]) == pytest.approx(0.68763678, abs=1e-8)

    def test_only3(self):
        code, text = run("volume", "--quantity", "only3")
        doc = json.loads(text)
        assert code == EXIT_OK and doc["sampled"]
        assert doc["at_least4"] == pytest.approx(1 - doc["value"])

    def test_convergence_failure_exit_code(self):
        code, text = run("volume", "--tolerance", "1e-17")
        assert code == EXIT_NUMERIC
        assert "best_estimate" in json.loads(text)

    def test_bad_radius(self, capsys):
        code, _ = run("volume", "--radius", "-1")
        assert code == EXIT_DOMAIN
        assert "radius" in capsys.readouterr().err


class TestSlice:
    def test_three_coverage_of_top_face(self):
        code, text = run("slice", "--x", "0", "--k", "3", "--samples", "100000")
        assert code == EXIT_OK and json.loads(text)["sampled"] == 1.0

    def test_analytic_next_to_sampled(self):
        code, text = run("slice", "--x", "0.3", "--samples", "200000")
        doc = json.loads(text)
        assert abs(doc["z_score"]) < 4

    def test_bad_depth(self):
        assert run("slice", "--x", "2")[0] == EXIT_DOMAIN
        assert run("slice", "--x", "0.2", "--k", "9")[0] == EXIT_DOMAIN


class TestPlan:
    def test_two_cubes(self, tmp_path):
        foi = tmp_path / "foi.json"
        foi.write_text(json.dumps({"cell_size": 1.0, "cells": [[0, 0, 0], [1, 0, 0]]}))
        out = tmp_path / "plan.json"
        code, text = run("plan", "--foi", str(foi), "--out", str(out), "--samples", "50000")
        doc = json.loads(text)
        assert code == EXIT_OK
        assert doc["sensor_count"] == 11
        assert doc["coverage_full_plan"]["at_least"][3] == 1.0
        plan = json.loads(out.read_text())
        assert plan["radius"] == 1.0 and len(plan["sensors"]) == 11

        code, text = run("plan", "--foi", str(foi), "--plan", str(out), "--samples", "50000")
        again = json.loads(text)
        assert again["coverage_full_plan"] == doc["coverage_full_plan"]

    def test_box_csv(self, tmp_path):
        foi = tmp_path / "foi.json"
        foi.write_text(json.dumps({"cell_size": 2.0, "dims": [3, 3, 3]}))
        code, text = run("plan", "--foi", str(foi), "--samples", "20000", "--format", "csv")
        (row,) = read_csv_rows(text)
        assert code == EXIT_OK and int(row["sensor_count"]) == 108
        assert float(row["boundary_gap"]) == pytest.approx(27)

    def test_malformed_foi_names_field(self, tmp_path, capsys):
        foi = tmp_path / "foi.json"
        foi.write_text(json.dumps({"cell_size": 1.0, "cells": [[0, 0, 0], [1, 0]]}))
        assert run("plan", "--foi", str(foi))[0] == EXIT_DOMAIN
        assert "cells[1]" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert run("plan", "--foi", str(tmp_path / "nope.json"))[0] == EXIT_DOMAIN


class TestTables:
    def test_volume(self):
        code, text = run("tables", "--which", "volume", "--radii", "20,25,30,35,40,45,50")
        rows = read_csv_rows(text)
        assert code == EXIT_OK and len(rows) == 7
        assert list(rows[0]) == ["r", "Reuleaux Tetrahedron", "Sixsoid"]

    def test_density_json(self):
        code, text = run("tables", "--which", "density", "--r", "25", "--kmax", "6", "--format", "json")
        rows = json.loads(text)
        assert [r["k"] for r in rows] == [4, 5, 6]

    def test_bad_lists(self):
        assert run("tables", "--which", "volume", "--radii", "20,x")[0] == EXIT_DOMAIN
        assert run("tables", "--which", "density", "--kmin", "5", "--kmax", "4")[0] == EXIT_DOMAIN


class TestValidate:
    def test_passes(self):
        code, text = run("validate", "--samples", "1000000", "--slice-samples", "200000")
        assert code == EXIT_OK
        assert text.strip().endswith("PASS")

    def test_injected_fault_fails(self):
        code, text = run("validate", "--samples", "100000", "--slice-samples", "100000",
                         "--inject-fault", "statement-chord", "--format", "json")
        doc = json.loads(text)
        assert code == EXIT_NUMERIC and not doc["passed"]
        failed = {c["name"] for c in doc["checks"] if not c["passed"]}
        assert "slice-equivalence" in failed


class TestProfile:
    def test_rows(self):
        code, text = run("profile", "--points", "11")
        rows = read_csv_rows(text)
        assert code == EXIT_OK and len(rows) == 11
        assert float(rows[5]["area"]) == pytest.approx(0.8732485024306668)

    def test_only3(self):
        code, text = run("profile", "--quantity", "only3", "--points", "5")
        assert float(read_csv_rows(text)[-1]["area"]) == 0.0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sixsoid", "volume"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["quantity"] == "sixsoid"
