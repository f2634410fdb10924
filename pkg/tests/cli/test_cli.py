import json

import pytest

from gl_tilt.main import EXIT_FAILED, EXIT_INPUT, EXIT_OK, run


class TestValidateAndCohom:
    """Test the validate and cohom subcommands."""

    def test_validate(self, config_dir, capsys):
        assert run(["validate", str(config_dir / "p2_lines_conic.json")]) == EXIT_OK
        verdict = json.loads(capsys.readouterr().out)
        assert verdict["valid"]
        assert len(verdict["strata"]) == 7

    def test_validate_invalid(self, tmp_path, capsys):
        path = tmp_path / "concurrent.json"
        data = {
            "variety": {"kind": "p", "d": 2},
            "divisors": [{"label": f"L{k}", "class": 1, "weight": 2, "form": f} for k, f in enumerate([[1, 0, 0], [0, 1, 0], [1, 1, 0]])],
        }
        path.write_text(json.dumps(data), encoding="utf-8")
        assert run(["validate", str(path)]) == EXIT_FAILED
        assert not json.loads(capsys.readouterr().out)["valid"]

    def test_field_override(self, config_dir):
        assert run(["--field", "GF(5)", "validate", str(config_dir / "p2_lines_conic.json")]) == EXIT_OK

    def test_missing_file(self, tmp_path):
        assert run(["validate", str(tmp_path / "missing.json")]) == EXIT_INPUT

    def test_cohom(self, config_dir, capsys):
        assert run(["cohom", str(config_dir / "sigma2_section_fiber.json"), "--classes", "[[0,0],[0,-2]]"]) == EXIT_OK
        table = json.loads(capsys.readouterr().out)
        assert table["canonical"] == [0, -2]
        assert table["rows"][1]["h"] == [0, 0, 1]

    def test_cohom_bad_classes(self, config_dir):
        assert run(["cohom", str(config_dir / "sigma2_section_fiber.json"), "--classes", "[[0,0"]) == EXIT_INPUT
        assert run(["cohom", str(config_dir / "sigma2_section_fiber.json"), "--classes", "[[1]]"]) == EXIT_INPUT


class TestCheckAndAssemble:
    """Test exit codes of the tilting subcommands."""

    def test_check_catalog(self, config_dir, capsys):
        assert run(["check", str(config_dir / "sigma0_two_curves.json")]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["passed"]
        assert report["gldim"] == 2

    def test_check_tampered(self, data_dir):
        assert run(["check", str(data_dir / "p2_lines_tampered.json")]) == EXIT_FAILED

    def test_auto_twist(self, data_dir, capsys):
        assert run(["check", str(data_dir / "p2_lines_tampered.json"), "--auto-twist"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["twists"] == {"L1": 3}

    def test_assemble(self, config_dir, capsys):
        assert run(["assemble", str(config_dir / "p2_lines.json")]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["total"] == len(report["summands"]) == 15

    def test_assemble_tampered(self, data_dir):
        assert run(["assemble", str(data_dir / "p2_lines_tampered.json")]) == EXIT_FAILED

    def test_out_file(self, config_dir, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert run(["--out", str(out), "assemble", str(config_dir / "p1_three_points.json")]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert json.loads(out.read_text(encoding="utf-8"))["total"] == 8


class TestSquidCommands:
    def test_squid_dot(self, config_dir, capsys):
        assert run(["squid", str(config_dir / "squid_p2_33.json")]) == EXIT_OK
        text = capsys.readouterr().out
        nodes = [line for line in text.splitlines() if "[label=" in line and "->" not in line]
        assert len(nodes) == 15

    def test_squid_json(self, config_dir, capsys):
        assert run(["--format", "json", "squid", str(config_dir / "squid_p1_22.json")]) == EXIT_OK
        assert len(json.loads(capsys.readouterr().out)["vertices"]) == 4

    def test_dot_only_for_squid(self, config_dir, capsys):
        assert run(["--format", "dot", "check", str(config_dir / "p2_lines.json")]) == EXIT_INPUT
        assert capsys.readouterr().out == ""
        assert run(["--format", "json", "check", str(config_dir / "p2_lines.json")]) == EXIT_OK

    def test_crosscheck(self, config_dir, capsys):
        assert run(["crosscheck", str(config_dir / "squid_p1_22.json")]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["path_total"] == 10

    def test_bad_spec(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps({"d": 1, "weights": [2]}), encoding="utf-8")
        assert run(["squid", str(path)]) == EXIT_INPUT


class TestGridDemo:
    def test_griddemo(self, capsys):
        assert run(["griddemo", "a2-zero"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        names = {c["name"] for c in report["checks"]}
        assert {"pi iota = 0 on iota_lambda X along 0", "pi pi_rho = id along 0", "iota_lambda iota = id on iota_rho X along 0"} <= names
        assert all(c["holds"] for c in report["checks"])
        assert report["objects"]["M"]["objects"]["1"]["dims"] == {"1": 1, "2": 1}

    def test_unknown_name(self):
        with pytest.raises(SystemExit):
            run(["griddemo", "nope"])
