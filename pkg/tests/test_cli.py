"""System file loading, CLI commands, exit codes, report schema."""

import json
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from dirackit import load_system
from dirackit.cli import main
from dirackit.errors import ValidationError

SYSTEMS = Path(__file__).resolve().parent.parent / "systems"
SPHERE = str(SYSTEMS / "sphere.system")
TRIVIAL = str(SYSTEMS / "trivial.system")
DEGENERATE = str(SYSTEMS / "degenerate.system")
PAIR = str(SYSTEMS / "pair_elimination.system")
ANGULAR = str(SYSTEMS / "angular_momentum.system")


def schema():
    return json.loads(
        resources.files("dirackit").joinpath("report_schema.json").read_text())


class TestLoadSystem:
    def test_sphere(self):
        spec = load_system(SPHERE)
        assert spec.ps.n == 3
        assert len(spec.constraints) == 2
        assert spec.ps.parameters == ("r",)
        assert spec.sampler.seed == 42
        assert spec.primaries is not None
        assert spec.on_shell_names == ("chi1",)

    def test_undeclared_symbol(self, tmp_path):
        path = tmp_path / "bad.system"
        path.write_text("[system]\nn = 2\n[constraints]\nchi1 = y1\nchi2 = p1\n")
        with pytest.raises(ValidationError):
            load_system(str(path))

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.system"
        path.write_text("")
        with pytest.raises(ValidationError):
            load_system(str(path))

    def test_duplicate_constraint_name(self, tmp_path):
        path = tmp_path / "dup.system"
        path.write_text("[system]\nn = 1\n[constraints]\nchi1 = x1\nchi1 = p1\n")
        with pytest.raises(ValidationError):
            load_system(str(path))

    def test_syntax_error_carries_location(self, tmp_path):
        path = tmp_path / "syn.system"
        path.write_text("[system]\nn = 1\n[constraints]\nchi1 = x1 +\nchi2 = p1\n")
        with pytest.raises(ValidationError) as err:
            load_system(str(path))
        assert ":4:" in str(err.value)


class TestExitCodes:
    def test_analyze_ok(self, capsys):
        assert main(["analyze", SPHERE]) == 0

    def test_missing_file(self, capsys):
        assert main(["analyze", "/nonexistent.system"]) == 2

    def test_invalid_file(self, tmp_path, capsys):
        path = tmp_path / "bad.system"
        path.write_text("[system]\nn = 2\n[constraints]\nchi1 = y9\nchi2 = p1\n")
        assert main(["analyze", str(path)]) == 2

    def test_not_second_class(self, capsys):
        assert main(["analyze", DEGENERATE]) == 3

    def test_sampling_failure(self, tmp_path, capsys):
        path = tmp_path / "empty_variety.system"
        path.write_text("[system]\nn = 1\n[constraints]\nchi1 = x1^2 + 1\n"
                        "chi2 = p1\n[sampler]\nseed = 1\npoints = 1\n"
                        "max_retries = 3\nmax_newton_iters = 20\n")
        assert main(["analyze", str(path)]) == 4

    def test_closure_without_primaries(self, capsys):
        assert main(["closure", TRIVIAL]) == 2

    def test_closure_non_polynomial(self, tmp_path, capsys):
        # sphere canonical variables without on-shell rules stay rational
        path = tmp_path / "nonpoly.system"
        path.write_text(
            "[system]\nn = 3\nparameters = r\nbind r = 1.0\n"
            "[constraints]\nchi1 = x1^2 + x2^2 + x3^2 - r^2\n"
            "chi2 = p1*x1 + p2*x2 + p3*x3\n"
            "[primaries]\ng1 = x1\ng2 = p1\n")
        assert main(["closure", str(path), "--mode", "dirac"]) == 5

    def test_trivial_system_ok(self, capsys):
        assert main(["analyze", TRIVIAL]) == 0
        out = capsys.readouterr().out
        assert "verdict: trivial_system" in out


class TestAnalyze:
    def test_sphere_json(self, capsys):
        assert main(["analyze", SPHERE, "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["classification"]["dof_pairs"] == 2
        assert report["trace_identity"]["expected"] == 2
        assert report["trace_identity"]["holds"] is True
        assert report["verdict"]["kind"] == "infinite_dimensional"
        assert report["closure"]["closed"] is True

    def test_sphere_text_verdict_line(self, capsys):
        assert main(["analyze", SPHERE]) == 0
        assert "verdict: infinite_dimensional" in capsys.readouterr().out

    def test_key_order_stable(self, capsys):
        main(["analyze", SPHERE, "--format", "json"])
        report = json.loads(capsys.readouterr().out)
        assert list(report) == ["version", "input_digest", "system",
                                "classification", "trace_identity", "closure",
                                "verdict", "timings_ms"]

    def test_determinism_byte_identical(self, capsys):
        main(["analyze", SPHERE, "--format", "json"])
        first = capsys.readouterr().out
        main(["analyze", SPHERE, "--format", "json"])
        second = capsys.readouterr().out
        assert first == second

    def test_schema_validates_all_reportable_systems(self, capsys):
        s = schema()
        for path in (SPHERE, TRIVIAL, PAIR, ANGULAR):
            assert main(["analyze", path, "--format", "json"]) == 0
            report = json.loads(capsys.readouterr().out)
            jsonschema.validate(report, s)


class TestBracket:
    def test_poisson_delta(self, capsys):
        assert main(["bracket", SPHERE, "--f", "x1", "--g", "p1"]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_poisson_zero(self, capsys):
        assert main(["bracket", SPHERE, "--f", "x1", "--g", "p2"]) == 0
        assert capsys.readouterr().out.strip() == "0"

    def test_dirac_sphere(self, capsys):
        assert main(["bracket", SPHERE, "--f", "x1", "--g", "p1",
                     "--mode", "dirac"]) == 0
        out = capsys.readouterr().out.strip()
        assert out == "(x2^2 + x3^2)/(x1^2 + x2^2 + x3^2)"

    def test_parse_error_exit(self, capsys):
        assert main(["bracket", SPHERE, "--f", "x1 +", "--g", "p1"]) == 2


class TestOtherCommands:
    def test_classify(self, capsys):
        assert main(["classify", SPHERE, "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["classification"]["verdict"] == "second_class"

    def test_trace(self, capsys):
        assert main(["trace", SPHERE]) == 0
        out = capsys.readouterr().out
        assert "expected=2" in out and "holds=true" in out

    def test_closure_poisson_angular(self, capsys):
        assert main(["closure", ANGULAR, "--mode", "poisson",
                     "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["closure"]["closed"] is True
        assert all(v == "0" for row in report["closure"]["z"] for v in row)
        assert report["verdict"]["kind"] == "no_obstruction_detected"

    def test_closure_dirac_pair_elimination(self, capsys):
        assert main(["closure", PAIR, "--mode", "dirac", "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdict"]["kind"] == "infinite_dimensional"
        assert report["verdict"]["witness"]["central_charge"] == "1"

    def test_verdict_sphere(self, capsys):
        assert main(["verdict", SPHERE]) == 0
        assert "infinite_dimensional" in capsys.readouterr().out

    def test_verdict_trivial(self, capsys):
        assert main(["verdict", TRIVIAL]) == 0
        assert "trivial_system" in capsys.readouterr().out

    def test_verdict_degenerate(self, capsys):
        assert main(["verdict", DEGENERATE]) == 3
