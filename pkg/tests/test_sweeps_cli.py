"""Sweep engine and CLI tests: determinism, schemas, exit codes."""

import json
import math

import numpy as np
import pytest

from twoband import (GlobalReference, SpecError, SweepSpec, detect_cusps,
                     plateau_reference, records_to_csv, records_to_json,
                     run_sweep, write_records)
from twoband.cli import main
from twoband.quadrature import BZQuadratureConfig

PI = math.pi


class TestSweepSpecValidation:
    def test_unknown_model(self):
        with pytest.raises(SpecError):
            SweepSpec(model="kitaev", sweep=("mu", 0.0, 1.0, 5))

    def test_too_few_points(self):
        with pytest.raises(SpecError):
            SweepSpec(model="ssh", sweep=("t2", 0.0, 1.0, 1))

    def test_reversed_range(self):
        with pytest.raises(SpecError):
            SweepSpec(model="ssh", sweep=("t2", 2.0, 1.0, 5))

    def test_sweep_parameter_cannot_be_fixed(self):
        with pytest.raises(SpecError):
            SweepSpec(model="ssh", sweep=("t2", 0.1, 1.0, 5), fixed={"t2": 1.0})

    def test_unknown_quantity(self):
        with pytest.raises(SpecError):
            SweepSpec(model="ssh", sweep=("t2", 0.1, 1.0, 5), quantities=("entropy",))

    def test_nh_model_rejects_hermitian_quantities(self):
        with pytest.raises(SpecError):
            SweepSpec(model="nh-ssh", sweep=("t2", 0.1, 1.0, 5), quantities=("chi_f",))

    def test_piecewise_reference_rejects_bound_and_ratio(self):
        with pytest.raises(SpecError):
            SweepSpec(model="ssh", sweep=("t2", 0.1, 1.0, 5),
                      reference=plateau_reference(), quantities=("bound",))


class TestRunSweep:
    def test_deterministic_csv(self):
        spec = SweepSpec(model="ssh", sweep=("t2", 0.2, 2.0, 7), fixed={"t1": 1.0},
                         quantities=("complexity", "chi_f"))
        a = records_to_csv(spec, run_sweep(spec))
        b = records_to_csv(spec, run_sweep(spec))
        assert a == b

    def test_jobs_do_not_change_results(self):
        spec = SweepSpec(model="massive-dirac", sweep=("mu", 0.2, 1.4, 9),
                         reference=GlobalReference(0.0, 0.0))
        serial = records_to_csv(spec, run_sweep(spec, jobs=1))
        parallel = records_to_csv(spec, run_sweep(spec, jobs=4))
        assert serial == parallel

    def test_resolution_consistency_at_shared_points(self):
        coarse = SweepSpec(model="ssh", sweep=("t2", 0.2, 1.8, 5), fixed={"t1": 1.0})
        fine = SweepSpec(model="ssh", sweep=("t2", 0.2, 1.8, 9), fixed={"t1": 1.0})
        cv = {r.lam: r.values["complexity"] for r in run_sweep(coarse)}
        fv = {r.lam: r.values["complexity"] for r in run_sweep(fine)}
        shared = sorted(set(cv) & set(fv))
        assert len(shared) >= 3
        for lam in shared:
            assert abs(cv[lam] - fv[lam]) < 1e-9

    def test_massive_dirac_antisymmetry(self):
        spec = SweepSpec(model="massive-dirac", sweep=("mu", -2.0, 2.0, 9),
                         reference=GlobalReference(0.0, 0.0))
        recs = run_sweep(spec)
        values = {round(r.lam, 12): r.values["complexity"] for r in recs}
        for mu in (2.0, 1.0, 0.5):
            assert values[mu] + values[-mu] == pytest.approx(1.0, abs=1e-9)

    def test_ssh_sweep_shows_derivative_cusp_at_transition(self):
        spec = SweepSpec(model="ssh", sweep=("t2", 0.2, 2.0, 61), fixed={"t1": 1.0})
        recs = run_sweep(spec)
        cusps = detect_cusps([(r.lam, r.values["complexity"]) for r in recs])
        spacing = recs[1].lam - recs[0].lam
        assert len(cusps) == 1 and abs(cusps[0] - 1.0) <= spacing

    def test_divergence_flag_at_criticality(self):
        spec = SweepSpec(model="ssh", sweep=("t2", 0.9, 1.1, 3), fixed={"t1": 1.0},
                         quantities=("chi_f",))
        recs = run_sweep(spec, BZQuadratureConfig(max_subdivisions=300))
        flags = {round(r.lam, 6): r.flags for r in recs}
        assert "diverged" in flags[1.0]
        assert flags[0.9] == frozenset()

    def test_chi_components_columns(self):
        spec = SweepSpec(model="massive-dirac", sweep=("mu", 0.5, 1.5, 3),
                         quantities=("chi_f_components",))
        recs = run_sweep(spec)
        for rec in recs:
            assert set(rec.values) == {"chi_f_x", "chi_f_y", "chi_f_z"}
            assert rec.values["chi_f_y"] == 0.0

    def test_winding_column_tracks_transition(self):
        spec = SweepSpec(model="ssh", sweep=("t2", 0.4, 2.0, 5), fixed={"t1": 1.0},
                         quantities=("winding",))
        values = [r.values["winding"] for r in run_sweep(spec)]
        assert values[0] == 0.0 and values[-1] == 1.0

    def test_bound_columns_satisfied(self):
        spec = SweepSpec(model="massive-dirac", sweep=("mu", 0.5, 2.0, 4),
                         reference=GlobalReference(0.0, 0.0), quantities=("bound",))
        for rec in run_sweep(spec):
            assert rec.values["bound_satisfied"] == 1.0
            assert rec.values["bound_lhs"] <= rec.values["bound_rhs"]

    def test_ratio_sweep_saturates(self):
        for spec in (
            SweepSpec(model="ssh", sweep=("t2", 40.0, 50.0, 3), fixed={"t1": 1.0},
                      reference=GlobalReference(0.5 * PI, PI), quantities=("ratio",)),
            SweepSpec(model="massive-dirac", sweep=("mu", 40.0, 50.0, 3),
                      reference=GlobalReference(0.0, 0.0), quantities=("ratio",)),
        ):
            recs = run_sweep(spec, BZQuadratureConfig(abs_tol=1e-12, rel_tol=1e-12))
            assert recs[-1].values["ratio"] == pytest.approx(math.sqrt(2.0 / 3.0), abs=1e-3)


class TestEmission:
    def test_csv_schema_and_roundtrip(self, tmp_path):
        spec = SweepSpec(model="ssh", sweep=("t2", 0.4, 1.6, 4), fixed={"t1": 1.0},
                         quantities=("complexity",))
        recs = run_sweep(spec)
        text = records_to_csv(spec, recs)
        lines = text.strip().split("\n")
        assert lines[0] == "lambda,complexity,flags"
        assert len(lines) == 1 + 4
        for line, rec in zip(lines[1:], recs):
            lam, comp, flags = line.split(",")
            assert float(lam) == rec.lam
            assert float(comp) == rec.values["complexity"]  # 17 digits round-trip
            assert flags == ""

    def test_json_schema(self, tmp_path):
        spec = SweepSpec(model="massive-dirac", sweep=("mu", 0.5, 1.0, 2),
                         quantities=("complexity", "dcomplexity"))
        recs = run_sweep(spec)
        path = tmp_path / "out.json"
        write_records(spec, recs, str(path))
        payload = json.loads(path.read_text())
        assert payload["model"] == "massive-dirac"
        assert payload["sweep"]["points"] == 2
        assert len(payload["records"]) == 2
        assert set(payload["records"][0]["values"]) == {"complexity", "dcomplexity"}

    def test_write_csv_file(self, tmp_path):
        spec = SweepSpec(model="ssh", sweep=("t2", 0.4, 1.6, 3), fixed={"t1": 1.0})
        path = tmp_path / "out.csv"
        write_records(spec, run_sweep(spec), str(path))
        assert path.read_text().startswith("lambda,complexity,flags")


class TestCLI:
    def test_sweep_to_file(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        code = main(["sweep", "--model", "ssh", "--set", "t1=1.0",
                     "--sweep", "t2:0.4:1.6:4", "--theta", str(0.5 * PI),
                     "--phi", str(PI), "--out", str(out)])
        assert code == 0
        assert out.read_text().startswith("lambda,complexity,flags")

    def test_sweep_stdout(self, capsys):
        code = main(["sweep", "--model", "massive-dirac", "--sweep", "mu:0.5:1.5:3",
                     "--theta", "0", "--phi", "0"])
        assert code == 0
        captured = capsys.readouterr().out
        assert captured.startswith("lambda,complexity,flags")

    def test_degrees_flag(self, capsys):
        code = main(["sweep", "--model", "ssh", "--set", "t1=1",
                     "--sweep", "t2:0.5:1.5:3", "--theta", "90", "--phi", "180",
                     "--degrees"])
        assert code == 0
        first_row = capsys.readouterr().out.strip().split("\n")[1]
        lam, comp, _ = first_row.split(",")
        from twoband import SSHParams, ssh_complexity_closed
        expected = ssh_complexity_closed(SSHParams(1.0, 0.5), GlobalReference(0.5 * PI, PI))
        assert float(comp) == pytest.approx(expected, abs=1e-8)

    def test_piecewise_reference_file(self, tmp_path, capsys):
        ref_file = tmp_path / "ref.txt"
        ref_file.write_text(f"{-PI} 0 0 0 1\n0 {PI} 0 0 -1\n")
        code = main(["sweep", "--model", "ssh", "--set", "t1=1",
                     "--sweep", "t2:1.5:3.0:3", "--ref-piecewise", str(ref_file)])
        assert code == 0
        rows = capsys.readouterr().out.strip().split("\n")[1:]
        for row in rows:
            assert float(row.split(",")[1]) == pytest.approx(0.5 - 1.0 / PI, abs=1e-8)

    def test_config_file_with_flag_override(self, tmp_path, capsys):
        conf = tmp_path / "sweep.conf"
        conf.write_text(
            "model = ssh\n"
            "sweep = t2:0.5:1.5:3\n"
            "set.t1 = 1.0\n"
            "theta = 1.0   # overridden by the flag below\n"
        )
        code = main(["sweep", "--config", str(conf), "--theta", str(0.5 * PI)])
        assert code == 0
        assert capsys.readouterr().out.startswith("lambda,complexity,flags")

    def test_verify_suite_passes(self, capsys):
        assert main(["verify", "winding"]) == 0
        out = capsys.readouterr().out
        assert "[PASS]" in out and "[FAIL]" not in out

    def test_winding_subcommand(self, capsys):
        assert main(["winding", "--model", "ssh", "--set", "t1=1", "--set", "t2=2"]) == 0
        assert "winding(contour) = 1" in capsys.readouterr().out

    def test_dual_winding_subcommand(self, capsys):
        assert main(["winding", "--model", "dual-ssh", "--set", "r=0.5"]) == 0
        out = capsys.readouterr().out
        assert "winding(I)  = 0" in out and "winding(II) = 1" in out

    def test_duality_subcommand(self, capsys):
        assert main(["duality", "--set", "r=2", "--theta", str(0.5 * PI),
                     "--phi", str(PI)]) == 0
        assert "residual" in capsys.readouterr().out

    def test_bound_subcommand(self, capsys):
        assert main(["bound", "--model", "massive-dirac", "--set", "mu=1",
                     "--lam", "1.0", "--theta", "0", "--phi", "0"]) == 0
        assert "satisfied=True" in capsys.readouterr().out

    def test_ratio_subcommand(self, capsys):
        assert main(["ratio", "--model", "ssh", "--set", "t1=1", "--lam", "50",
                     "--theta", str(0.5 * PI), "--phi", str(PI)]) == 0
        assert "R(50)" in capsys.readouterr().out

    def test_nh_sweep_subcommand(self, tmp_path):
        out = tmp_path / "nh.json"
        code = main(["nh-sweep", "--set", "t1=2", "--set", "gamma=1",
                     "--sweep", "t2:1.4:1.6:3", "--theta", str(0.5 * PI),
                     "--phi", "0", "--quantities", "complexity", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["model"] == "nh-ssh"

    def test_spec_error_exit_code(self, capsys):
        assert main(["sweep", "--model", "ssh", "--sweep", "bogus"]) == 2
        assert main(["sweep", "--model", "ssh", "--sweep", "t2:2:1:5"]) == 2

    def test_numerical_error_exit_code(self, capsys):
        # equatorial reference leaves the dominant massive-Dirac component
        # with a vanishing coefficient -> undefined ratio
        code = main(["ratio", "--model", "massive-dirac", "--set", "mu=1",
                     "--lam", "1.0", "--theta", str(0.5 * PI), "--phi", "0"])
        assert code == 3

    def test_missing_model_is_spec_error(self):
        assert main(["sweep", "--sweep", "t2:0.5:1.5:3"]) == 2
