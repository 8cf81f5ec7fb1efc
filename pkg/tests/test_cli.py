"""End-to-end command line tests through main(argv)."""

import csv
import io
import math

import pytest

from mmdosim import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestReflect:
    def test_single_model_normal_incidence(self, capsys):
        code, out, _ = run(capsys, "reflect", "--model", "gabriel", "--angles", "0,45")
        assert code == 0
        rows = rows_of(out)
        assert rows[0]["model"] == "gabriel"
        assert float(rows[0]["r_parallel"]) == pytest.approx(0.3776, abs=5e-5)
        assert rows[0]["r_parallel"] == rows[0]["r_perpendicular"]

    def test_all_models_present(self, capsys):
        code, out, _ = run(capsys, "reflect", "--angles", "0")
        rows = rows_of(out)
        assert code == 0
        assert sorted(r["model"] for r in rows) == sorted(
            ["gandhi", "gabriel", "chahat_palm", "chahat_wrist_forearm",
             "alekseev_palm", "alekseev_forearm"]
        )

    def test_unity_permittivity_reflects_nothing(self, capsys):
        code, out, _ = run(
            capsys, "reflect", "--eps-real", "1", "--eps-imag", "0",
            "--angles", "0:80:10",
        )
        assert code == 0
        for row in rows_of(out):
            assert float(row["r_parallel"]) < 1e-30
            assert float(row["r_perpendicular"]) < 1e-30

    def test_deterministic_output(self, capsys):
        _, first, _ = run(capsys, "reflect", "--model", "gandhi", "--angles", "0:89:1")
        _, second, _ = run(capsys, "reflect", "--model", "gandhi", "--angles", "0:89:1")
        assert first == second

    def test_bad_angle_rejected(self, capsys):
        code, _, err = run(capsys, "reflect", "--angles", "95")
        assert code == 1
        assert "error" in err

    def test_unknown_model_rejected(self, capsys):
        code, _, err = run(capsys, "reflect", "--model", "nosuch")
        assert code == 1
        assert "error" in err


class TestDepth:
    def test_skin_depths_decrease(self, capsys):
        code, out, _ = run(capsys, "depth", "--tissue", "skin")
        assert code == 0
        depths = [float(r["depth_mm"]) for r in rows_of(out)]
        assert depths[0] == pytest.approx(0.6485, abs=5e-4)
        assert all(a > b for a, b in zip(depths, depths[1:]))

    def test_lossless_gets_error_row(self, capsys):
        code, out, _ = run(
            capsys, "depth", "--eps-real", "4", "--eps-imag", "0",
            "--frequencies-ghz", "60",
        )
        assert code == 0
        row = rows_of(out)[0]
        assert row["depth_mm"] == "inf"
        assert "lossless" in row["note"]

    def test_all_tissues(self, capsys):
        code, out, _ = run(capsys, "depth", "--tissue", "all")
        rows = rows_of(out)
        assert len(rows) == 16
        assert {r["tissue"] for r in rows} == {"skin", "sat", "muscle", "bone"}


class TestTemp:
    def test_surface_value(self, capsys):
        code, out, _ = run(
            capsys, "temp", "--preset", "naked-skin", "--z-step-um", "1000",
        )
        assert code == 0
        rows = rows_of(out)
        assert float(rows[0]["z_mm"]) == 0.0
        assert float(rows[0]["theta_degC"]) == pytest.approx(0.1532, abs=1e-3)
        assert float(rows[-1]["theta_degC"]) == pytest.approx(0.0, abs=1e-9)

    def test_zero_power_gives_zero_profile(self, capsys):
        code, out, _ = run(
            capsys, "temp", "--power-density", "0", "--z-step-um", "5000",
        )
        assert code == 0
        assert all(float(r["theta_degC"]) == 0.0 for r in rows_of(out))

    def test_linearity_between_runs(self, capsys):
        _, out10, _ = run(capsys, "temp", "--power-density", "10", "--z-step-um", "1000")
        _, out50, _ = run(capsys, "temp", "--power-density", "50", "--z-step-um", "1000")
        r10, r50 = rows_of(out10), rows_of(out50)
        for a, b in zip(r10, r50):
            t10, t50 = float(a["theta_degC"]), float(b["theta_degC"])
            if abs(t10) > 1e-12:
                assert t50 / t10 == pytest.approx(5.0, rel=1e-9)

    def test_fd_check_column(self, capsys):
        code, out, _ = run(
            capsys, "temp", "--fd-check", "--grid-step-um", "20", "--z-step-um", "5000",
        )
        assert code == 0
        for row in rows_of(out):
            assert abs(float(row["theta_degC"]) - float(row["theta_fd_degC"])) < 1e-3


class TestSweepClothing:
    def test_csv_and_figure(self, capsys, tmp_path):
        out_path = tmp_path / "sweep.csv"
        code, _, _ = run(
            capsys, "sweep-clothing", "--preset", "clothed-skin",
            "--thickness-range-mm", "0:2:0.5", "--output", str(out_path),
        )
        assert code == 0
        assert out_path.exists()
        assert (tmp_path / "sweep.png").exists()
        rows = rows_of(out_path.read_text())
        assert [r["thickness_mm"] for r in rows] == ["0", "0.5", "1", "1.5", "2"]

    def test_zero_row_is_naked_solve(self, capsys):
        _, out, _ = run(
            capsys, "sweep-clothing", "--thickness-range-mm", "0",
        )
        row = rows_of(out)[0]
        assert float(row["into_skin_fraction"]) == pytest.approx(0.6215, abs=5e-5)
        assert float(row["theta_surface_degC"]) == pytest.approx(0.1532, abs=1e-3)

    def test_no_figure_flag(self, capsys, tmp_path):
        out_path = tmp_path / "sweep.csv"
        run(
            capsys, "sweep-clothing", "--thickness-range-mm", "0:1:0.5",
            "--output", str(out_path), "--no-figure",
        )
        assert out_path.exists()
        assert not (tmp_path / "sweep.png").exists()

    def test_naked_preset_rejected(self, capsys):
        code, _, err = run(capsys, "sweep-clothing", "--preset", "naked-skin")
        assert code == 1
        assert "error" in err


COMPLIANCE_BASE = [
    "compliance", "--power-w", "0.1", "--gain-db", "10",
    "--largest-dimension-mm", "10", "--frequency-ghz", "60",
]


class TestCompliance:
    def test_compliant_exit_zero(self, capsys):
        code, out, _ = run(
            capsys, *COMPLIANCE_BASE, "--distance-m", "0.1",
            "--standard", "icnirp", "--population", "general",
        )
        assert code == 0
        assert "Compliant" in out
        assert "7.957747155 W/m^2" in out

    def test_non_compliant_exit_two(self, capsys):
        code, out, _ = run(
            capsys, *COMPLIANCE_BASE, "--distance-m", "0.05",
            "--standard", "icnirp", "--population", "general",
        )
        assert code == 2
        assert "NonCompliant" in out

    def test_occupational_alias_controlled(self, capsys):
        code, out, _ = run(
            capsys, *COMPLIANCE_BASE, "--distance-m", "0.05",
            "--standard", "icnirp", "--population", "controlled",
        )
        assert code == 0
        assert "occupational" in out

    def test_near_field_exit_three(self, capsys):
        code, out, _ = run(
            capsys, *COMPLIANCE_BASE, "--distance-m", "0.03",
            "--standard", "icnirp",
        )
        assert code == 3
        assert "NearFieldIndeterminate" in out

    def test_fcc_peak_is_an_error(self, capsys):
        code, _, err = run(
            capsys, *COMPLIANCE_BASE, "--distance-m", "0.1",
            "--standard", "fcc_mpe", "--localized-peak",
        )
        assert code == 1
        assert "C95.1-1992" in err

    def test_gain_flags_are_exclusive(self, capsys):
        code, _, err = run(
            capsys, "compliance", "--power-w", "0.1", "--gain-db", "10",
            "--gain-linear", "10", "--largest-dimension-mm", "10",
            "--frequency-ghz", "60", "--distance-m", "0.1", "--standard", "icnirp",
        )
        assert code == 1
        assert "gain" in err


class TestFarfield:
    def test_reference_values(self, capsys):
        code, out, _ = run(
            capsys, "farfield", "--power-w", "0.1", "--gain-db", "10",
            "--largest-dimension-mm", "10", "--frequency-ghz", "60",
            "--distances-m", "1,0.1,0.05",
        )
        assert code == 0
        pds = [float(r["pd_W_per_m2"]) for r in rows_of(out)]
        assert pds[0] == pytest.approx(0.079577, abs=1e-6)
        assert pds[1] == pytest.approx(7.9577, abs=1e-4)
        assert pds[2] == pytest.approx(31.8310, abs=1e-4)

    def test_near_field_row_and_exit(self, capsys):
        code, out, _ = run(
            capsys, "farfield", "--power-w", "0.1", "--gain-db", "10",
            "--largest-dimension-mm", "10", "--frequency-ghz", "60",
            "--distances-m", "1,0.03",
        )
        assert code == 3
        rows = rows_of(out)
        assert rows[1]["pd_W_per_m2"] == ""
        assert "near field" in rows[1]["note"]


class TestConfig:
    def test_config_preloads_flags(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.yaml"
        cfg.write_text("power-density: 50\npreset: clothed-skin\n")
        _, out, _ = run(
            capsys, "temp", "--config", str(cfg), "--z-step-um", "35000",
        )
        rows = rows_of(out)
        # clothed preset at 50 W/m^2: five times the 10 W/m^2 surface value
        assert float(rows[0]["theta_degC"]) == pytest.approx(5 * 0.219, abs=5e-3)

    def test_explicit_flag_beats_config(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.yaml"
        cfg.write_text("power-density: 50\n")
        _, out, _ = run(
            capsys, "temp", "--config", str(cfg), "--power-density", "10",
            "--z-step-um", "35000",
        )
        assert float(rows_of(out)[0]["theta_degC"]) == pytest.approx(0.1532, abs=1e-3)

    def test_unknown_config_key_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.yaml"
        cfg.write_text("no-such-flag: 1\n")
        code, _, err = run(capsys, "temp", "--config", str(cfg))
        assert code == 1
        assert "no-such-flag" in err

    def test_missing_config_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "temp", "--config", str(tmp_path / "nope.yaml"))
        assert code == 1


class TestOutputs:
    def test_reflect_writes_files(self, capsys, tmp_path):
        out_path = tmp_path / "reflect.csv"
        code, _, _ = run(
            capsys, "reflect", "--model", "gabriel", "--output", str(out_path),
        )
        assert code == 0
        assert out_path.exists()
        assert (tmp_path / "reflect.png").exists()
        header = out_path.read_text().splitlines()[0]
        assert header == "model,theta_deg,r_parallel,r_perpendicular"

    def test_temp_figure(self, capsys, tmp_path):
        out_path = tmp_path / "temp.csv"
        code, _, _ = run(
            capsys, "temp", "--z-step-um", "500", "--output", str(out_path),
        )
        assert code == 0
        assert (tmp_path / "temp.png").exists()

    def test_fields_profile(self, capsys):
        code, out, _ = run(
            capsys, "fields", "--preset", "naked-skin", "--z-step-um", "100",
            "--z-max-mm", "2",
        )
        assert code == 0
        rows = rows_of(out)
        assert rows[0]["layer"] == "skin"
        assert rows[-1]["layer"] == "sat"
        # surface heating of a 10 W/m^2 exposure is order 1e4 W/m^3
        assert float(rows[0]["sar_rho_W_per_m3"]) > 1e4
        sar = [float(r["sar_rho_W_per_m3"]) for r in rows if r["layer"] == "skin"]
        assert all(a >= b for a, b in zip(sar, sar[1:]))
