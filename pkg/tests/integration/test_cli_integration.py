"""Integration tests for the CLI on the shipped instance documents."""

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from app.cli import app
from lib.documents import dump_document, module_document
from lib.linalg import BaseRing, PresentedModule

INSTANCES = Path(__file__).parents[2] / "instances"

Z = BaseRing.integers()


@pytest.fixture
def runner() -> CliRunner:
    """CLI runner."""
    return CliRunner()


def _json(result) -> dict:
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


class TestShippedInstances:
    """The instances directory is exactly what the tool writes."""

    @pytest.mark.parametrize("name", ["f4", "a-x-a", "matrix-graded"])
    def test_gallery_output_is_shipped_file(self, runner: CliRunner, name: str) -> None:
        """Test that gallery NAME reproduces instances/NAME.json byte for byte."""
        result = runner.invoke(app, ["gallery", name])
        assert result.exit_code == 0
        assert result.stdout == (INSTANCES / f"{name}.json").read_text(encoding="utf-8")

    @pytest.mark.parametrize(
        ("filename", "module"),
        [
            ("z2.module.json", PresentedModule.cyclic(Z, 2)),
            ("z2-z3.module.json", PresentedModule.from_relations(Z, [[2, 0], [0, 3]], [0, 0])),
            ("f2-01.module.json", PresentedModule.free(BaseRing.prime_field(2), [0, 1])),
        ],
    )
    def test_module_files(self, filename: str, module: PresentedModule) -> None:
        """Test that the shipped module documents are canonical."""
        expected = dump_document(module_document(module))
        assert (INSTANCES / filename).read_text(encoding="utf-8") == expected


class TestWorkflows:
    """Multi-command sessions."""

    def test_gallery_then_every_instance_command(
        self, runner: CliRunner, tmp_path: Path
    ) -> None:
        """Test a fixture written by gallery through every instance command."""
        path = tmp_path / "f9.json"
        assert runner.invoke(app, ["gallery", "f9", "-o", str(path)]).exit_code == 0
        assert _json(runner.invoke(app, ["check-galois", str(path)]))["verdicts"]["galois"]
        assert _json(runner.invoke(app, ["dual-basis", str(path)]))["verdicts"]["dual_basis"]
        separable = _json(runner.invoke(app, ["check-separable", str(path)]))
        assert separable["verdicts"]["separable"] is True
        concentrated = _json(runner.invoke(app, ["concentrate", str(path)]))
        assert concentrated["verdicts"]["outcome"] == "concentrated"
        assert _json(runner.invoke(app, ["kaehler", str(path)]))["verdicts"]["kaehler_zero"]
        assert _json(runner.invoke(app, ["hh1", str(path)]))["verdicts"]["nontrivial"] is False
        cohomology = _json(runner.invoke(app, ["group-cohomology", str(path), "-s", "1"]))
        assert cohomology["verdicts"]["zero"] is True

    def test_report_written_and_reread(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that a report written with --out matches stdout."""
        z2 = str(INSTANCES / "z2.module.json")
        out = tmp_path / "tor.json"
        printed = runner.invoke(app, ["tor", z2, z2, "-p", "1"])
        written = runner.invoke(app, ["tor", z2, z2, "-p", "1", "-o", str(out)])
        assert written.exit_code == 0
        assert out.read_text(encoding="utf-8") == printed.stdout

    def test_periodic_tor_over_z4(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test Tor_3(Z/2, Z/2) over Z/4 from a written module document."""
        module = PresentedModule.cyclic(BaseRing.integers_mod(4), 2)
        path = tmp_path / "z4-z2.module.json"
        path.write_text(dump_document(module_document(module)), encoding="utf-8")
        report = _json(runner.invoke(app, ["tor", str(path), str(path), "-p", "3"]))
        assert report["verdicts"]["invariants"] == "Z/2"
        assert [row["index"] for row in report["evidence"]["table"]] == [0, 1, 2, 3]


class TestFuzzDeterminism:
    """Equal arguments print equal bytes."""

    def test_same_seed_same_bytes(self, runner: CliRunner) -> None:
        """Test that two runs with one seed print identical reports."""
        args = ["fuzz", "separable-grading", "-n", "6", "--seed", "12"]
        first = runner.invoke(app, args)
        second = runner.invoke(app, args)
        assert first.exit_code == 0
        assert first.stdout == second.stdout

    def test_jobs_do_not_change_output(self, runner: CliRunner) -> None:
        """Test that worker processes do not change the report."""
        args = ["fuzz", "galois-grading", "-n", "6", "--seed", "3"]
        serial = _json(runner.invoke(app, [*args, "--jobs", "1"]))
        parallel = _json(runner.invoke(app, [*args, "--jobs", "2"]))
        assert serial["verdicts"] == parallel["verdicts"]
        assert serial["evidence"] == parallel["evidence"]
