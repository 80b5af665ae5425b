"""Tests for CLI module."""

import json
from pathlib import Path
from unittest.mock import Mock, patch

import pytest
from typer.testing import CliRunner

from app.cli import app
from lib.api import Workbench
from lib.errors import InconsistentCertificate
from lib.settings import Settings

runner = CliRunner()

INSTANCES = Path(__file__).parents[2] / "instances"


@pytest.fixture
def dual_numbers(tmp_path: Path) -> Path:
    """The dual-numbers fixture written out by the gallery command."""
    path = tmp_path / "dual-numbers.json"
    result = runner.invoke(app, ["gallery", "dual-numbers", "--out", str(path)])
    assert result.exit_code == 0
    return path


def _report(result) -> dict:
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


class TestInstanceCommands:
    """Tests for commands taking an instance document."""

    def test_check_galois_f4(self) -> None:
        """Test that F_4 is reported Galois."""
        report = _report(runner.invoke(app, ["check-galois", str(INSTANCES / "f4.json")]))
        assert report["command"] == "check-galois"
        assert report["verdicts"]["galois"] is True
        assert "timing" not in report

    def test_check_galois_text(self) -> None:
        """Test the text rendering of a verdict table."""
        result = runner.invoke(
            app, ["check-galois", str(INSTANCES / "a-x-a.json"), "--format", "text"]
        )
        assert result.exit_code == 0
        assert "algext check-galois" in result.stdout
        assert "galois" in result.stdout

    def test_missing_action(self, dual_numbers: Path) -> None:
        """Test that check-galois on an instance without an action exits 2."""
        result = runner.invoke(app, ["check-galois", str(dual_numbers)])
        assert result.exit_code == 2

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that a nonexistent instance path is a usage error."""
        result = runner.invoke(app, ["hh1", str(tmp_path / "absent.json")])
        assert result.exit_code == 2

    def test_concentrate_inseparable(self, dual_numbers: Path) -> None:
        """Test that concentrate refuses an inseparable algebra with exit 2."""
        result = runner.invoke(app, ["concentrate", str(dual_numbers)])
        assert result.exit_code == 2

    def test_concentrate_stuck(self) -> None:
        """Test that the matrix example reports a stuck loop."""
        report = _report(runner.invoke(app, ["concentrate", str(INSTANCES / "matrix-graded.json")]))
        assert report["verdicts"]["outcome"] == "stuck"

    def test_hh1(self, dual_numbers: Path) -> None:
        """Test hh1 on the dual numbers."""
        report = _report(runner.invoke(app, ["hh1", str(dual_numbers)]))
        assert report["verdicts"] == {"nontrivial": True, "degree": 1}
        assert report["arguments"] == {"instance": str(dual_numbers)}

    def test_kaehler_text(self, dual_numbers: Path) -> None:
        """Test kaehler in text form."""
        result = runner.invoke(app, ["kaehler", str(dual_numbers), "-f", "text"])
        assert result.exit_code == 0
        assert "kaehler_zero" in result.stdout

    def test_check_separable_text_shows_witness(self) -> None:
        """Test that the text form prints the zero divisor of B_0."""
        result = runner.invoke(
            app, ["check-separable", str(INSTANCES / "matrix-graded.json"), "-f", "text"]
        )
        assert result.exit_code == 0
        assert "zero divisor" in result.stdout

    def test_timing(self) -> None:
        """Test that --timing records elapsed seconds."""
        report = _report(
            runner.invoke(app, ["check-separable", str(INSTANCES / "a-x-a.json"), "--timing"])
        )
        assert report["timing"] >= 0

    def test_out_file(self, tmp_path: Path) -> None:
        """Test that --out writes the report to a file."""
        path = tmp_path / "report.json"
        result = runner.invoke(
            app, ["dual-basis", str(INSTANCES / "f4.json"), "--out", str(path)]
        )
        assert result.exit_code == 0
        assert json.loads(path.read_text(encoding="utf-8"))["command"] == "dual-basis"

    def test_group_cohomology(self) -> None:
        """Test H^2 of the swap action on F_2 x F_2."""
        report = _report(
            runner.invoke(app, ["group-cohomology", str(INSTANCES / "a-x-a.json"), "-s", "2"])
        )
        assert report["verdicts"]["zero"] is True

    def test_cap_exceeded(self) -> None:
        """Test that a degree above --cap exits 2."""
        result = runner.invoke(
            app,
            ["group-cohomology", str(INSTANCES / "a-x-a.json"), "-s", "3", "--cap", "2"],
        )
        assert result.exit_code == 2
        assert "CapExceeded" in result.output

    @patch("app.cli.get_workbench")
    def test_inconsistency_exits_3(self, mock_get_wb: Mock) -> None:
        """Test that an internal consistency failure exits 3."""
        mock_wb = Mock()
        mock_wb.hh1.side_effect = InconsistentCertificate("recheck failed")
        mock_get_wb.return_value = mock_wb
        result = runner.invoke(app, ["hh1", str(INSTANCES / "f4.json")])
        assert result.exit_code == 3
        assert "InconsistentCertificate" in result.output


class TestModuleCommands:
    """Tests for commands taking module documents."""

    def test_tor(self) -> None:
        """Test Tor_1(Z/2, Z/2) = Z/2."""
        z2 = str(INSTANCES / "z2.module.json")
        report = _report(runner.invoke(app, ["tor", z2, z2, "--p", "1"]))
        assert report["verdicts"] == {"zero": False, "invariants": "Z/2"}
        assert report["arguments"]["p"] == 1

    def test_tor_text_table(self) -> None:
        """Test that the text form prints the bigraded table."""
        z2 = str(INSTANCES / "z2.module.json")
        result = runner.invoke(app, ["tor", z2, z2, "-p", "1", "-f", "text"])
        assert result.exit_code == 0
        assert "Nonzero pieces" in result.stdout

    def test_graded_tor(self) -> None:
        """Test the rank-2 cross term at q = 1."""
        f2 = str(INSTANCES / "f2-01.module.json")
        report = _report(runner.invoke(app, ["graded-tor", f2, f2, "--q", "1"]))
        assert report["verdicts"]["invariants"] == "F2^2"

    def test_tensor_self(self) -> None:
        """Test that (Z/2 + Z/3) ⊗ itself is Z/6."""
        report = _report(runner.invoke(app, ["tensor-self", str(INSTANCES / "z2-z3.module.json")]))
        assert report["verdicts"] == {"nonzero": True, "invariants": "Z/6"}


class TestGallery:
    """Tests for the gallery command."""

    def test_list(self) -> None:
        """Test listing fixtures."""
        result = runner.invoke(app, ["gallery"])
        assert result.exit_code == 0
        assert "Fixtures (" in result.stdout
        assert "matrix-graded" in result.stdout

    def test_unknown_fixture(self) -> None:
        """Test that a misspelt fixture exits 2 with a suggestion."""
        result = runner.invoke(app, ["gallery", "dual-number"])
        assert result.exit_code == 2
        assert "dual-numbers" in result.output

    def test_text(self) -> None:
        """Test the basis table of a fixture."""
        result = runner.invoke(app, ["gallery", "f4", "-f", "text"])
        assert result.exit_code == 0
        assert "Algebra over F2" in result.stdout

    def test_shipped_instance_matches(self) -> None:
        """Test that the gallery prints f4 exactly as shipped."""
        result = runner.invoke(app, ["gallery", "f4"])
        assert result.exit_code == 0
        assert result.stdout == (INSTANCES / "f4.json").read_text(encoding="utf-8")


class TestFuzz:
    """Tests for the fuzz command."""

    def test_list(self) -> None:
        """Test listing harnesses."""
        result = runner.invoke(app, ["fuzz"])
        assert result.exit_code == 0
        assert "Harnesses (7)" in result.stdout
        assert "thm-3.2" in result.stdout

    def test_alias_run(self) -> None:
        """Test that a harness runs under its alternative name."""
        result = runner.invoke(app, ["fuzz", "thm-3.2", "--trials", "2", "--seed", "7"])
        report = _report(result)
        assert report["verdicts"]["passed"] is True
        assert report["evidence"]["harness"] == "galois-grading"

    def test_short_run(self) -> None:
        """Test that a three-trial run passes."""
        report = _report(
            runner.invoke(app, ["fuzz", "separable-connective", "--trials", "3", "--seed", "1"])
        )
        assert report["verdicts"]["passed"] is True
        assert len(report["evidence"]["trials"]) == 3
        assert report["arguments"]["seed"] == 1

    def test_unknown_harness(self) -> None:
        """Test that an unknown harness exits 2."""
        result = runner.invoke(app, ["fuzz", "galois", "--trials", "1"])
        assert result.exit_code == 2

    def test_bad_degree_range(self) -> None:
        """Test that a malformed --degree-range is a usage error."""
        result = runner.invoke(app, ["fuzz", "tensor-square", "--degree-range", "zero"])
        assert result.exit_code == 2

    def test_empty_degree_range(self) -> None:
        """Test that LOW > HIGH is refused."""
        result = runner.invoke(app, ["fuzz", "tensor-square", "--degree-range=2,-2"])
        assert result.exit_code == 2

    def test_replay(self) -> None:
        """Test that --replay re-runs one trial."""
        first = _report(runner.invoke(app, ["fuzz", "tensor-square", "-n", "1", "--seed", "4"]))
        seed = first["evidence"]["trials"][0]["seed"]
        replayed = _report(runner.invoke(app, ["fuzz", "tensor-square", "--replay", seed]))
        assert replayed["verdicts"]["status"] == "holds"
        assert replayed["evidence"]["trial"]["seed"] == seed

    def test_text_run(self) -> None:
        """Test the text summary of a passing run."""
        result = runner.invoke(app, ["fuzz", "tensor-square", "-n", "2", "-f", "text"])
        assert result.exit_code == 0
        assert "No counterexample found" in result.stdout

    @patch("app.cli.get_workbench")
    def test_counterexample_exits_3(self, mock_get_wb: Mock) -> None:
        """Test that a failing run exits 3."""
        real = Workbench(Settings())
        document, _ = real.fuzz("tensor-square", trials=1)
        failing = document.model_copy(
            update={"verdicts": {**document.verdicts, "passed": False, "counterexamples": 1}}
        )
        mock_wb = Mock()
        mock_wb.fuzz.return_value = (failing, None)
        mock_get_wb.return_value = mock_wb
        result = runner.invoke(app, ["fuzz", "tensor-square", "-n", "1"])
        assert result.exit_code == 3


class TestLogging:
    """Tests for the global --log-level option."""

    @patch("app.cli.configure_logging")
    def test_log_level_option(self, mock_configure: Mock) -> None:
        """Test that --log-level reaches the logging setup."""
        result = runner.invoke(app, ["--log-level", "DEBUG", "gallery"])
        assert result.exit_code == 0
        mock_configure.assert_called_once_with("DEBUG")

    @patch("app.cli.configure_logging")
    def test_log_level_from_environment(self, mock_configure: Mock) -> None:
        """Test that ALGEXT_LOG_LEVEL is the fallback."""
        result = runner.invoke(app, ["gallery"], env={"ALGEXT_LOG_LEVEL": "INFO"})
        assert result.exit_code == 0
        mock_configure.assert_called_once_with("INFO")
