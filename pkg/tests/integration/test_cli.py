"""Integration tests for the command line."""
import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from app.core.exceptions import AuditError
from app.main import EXIT_FAILED, EXIT_INPUT, EXIT_OK, cli

PLANE = """\
# residue field and a complete intersection
ring R = F(101)[x,y]
module k = coker [[x, y]]
module C = coker [[x^2, y]]
complex K = koszul(x, y)
check beh on k
check binomial on C
check psi2 on K
"""

FROBENIUS = """\
ring R = F(3)[x,y]
complex K = koszul(x, y)
check dutta on K emax=1
"""


@pytest.fixture
def runner() -> CliRunner:
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        # click 8.2 always keeps stderr apart
        return CliRunner()


@pytest.fixture
def plane(tmp_path: Path) -> Path:
    path = tmp_path / "plane.inst"
    path.write_text(PLANE, encoding="utf-8")
    return path


@pytest.mark.integration
class TestResolutionCommands:
    def test_help(self, runner: CliRunner):
        result = runner.invoke(cli, ["--help"])
        assert result.exit_code == EXIT_OK
        for command in ("resolve", "betti", "check", "dutta", "suite"):
            assert command in result.stdout

    def test_version(self, runner: CliRunner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == EXIT_OK
        assert "0.1.0" in result.stdout

    def test_betti_text(self, runner: CliRunner, plane: Path):
        result = runner.invoke(cli, ["betti", str(plane)])
        assert result.exit_code == EXIT_OK
        assert "ring: F(101)[x,y]" in result.stdout
        assert "k: betti (1, 2, 1), total 4" in result.stdout
        assert "total: 1 2 1" in result.stdout
        assert "d_1" not in result.stdout

    def test_betti_machine(self, runner: CliRunner, plane: Path):
        result = runner.invoke(cli, ["betti", str(plane), "--format", "machine"])
        assert result.exit_code == EXIT_OK
        document = json.loads(result.stdout)
        assert document["instance"] == "plane.inst"
        rows = {r["module"]: r["betti"]["row"] for r in document["resolutions"]}
        assert rows == {"k": [1, 2, 1], "C": [1, 2, 1]}
        assert "differentials" not in document["resolutions"][0]

    def test_resolve_prints_maps(self, runner: CliRunner, plane: Path):
        result = runner.invoke(cli, ["resolve", str(plane), "--format", "machine"])
        assert result.exit_code == EXIT_OK
        k = json.loads(result.stdout)["resolutions"][0]
        assert k["twists"] == {"0": [0], "1": [1, 1], "2": [2]}
        assert len(k["differentials"]["1"]) == 1
        assert len(k["differentials"]["1"][0]) == 2

    def test_cap_exceeded(self, runner: CliRunner, plane: Path):
        result = runner.invoke(cli, ["betti", str(plane), "--cap", "1"])
        assert result.exit_code == EXIT_FAILED
        assert "k:" in result.stdout


@pytest.mark.integration
class TestCheckCommand:
    def test_declared_checks(self, runner: CliRunner, plane: Path):
        result = runner.invoke(cli, ["check", str(plane), "--format", "machine"])
        assert result.exit_code == EXIT_OK
        report = json.loads(result.stdout)
        assert report["dimension"] == 2
        assert [(r["name"], r["target"], r["verdict"]) for r in report["records"]] == [
            ("beh", "k", "holds"),
            ("binomial", "C", "holds"),
            ("psi2", "K", "holds"),
        ]

    def test_only(self, runner: CliRunner, plane: Path):
        result = runner.invoke(cli, ["check", str(plane), "--only", "binomial", "--format", "machine"])
        assert result.exit_code == EXIT_OK
        records = json.loads(result.stdout)["records"]
        assert [r["name"] for r in records] == ["binomial"]

    def test_text_report(self, runner: CliRunner, plane: Path):
        result = runner.invoke(cli, ["check", str(plane), "--format", "text"])
        assert result.exit_code == EXIT_OK
        assert "instance: plane.inst" in result.stdout
        assert "[beh] k: holds" in result.stdout
        assert "  total = 4" in result.stdout
        assert "ok" in result.stdout

    def test_machine_output_is_deterministic(self, runner: CliRunner, plane: Path):
        first = runner.invoke(cli, ["check", str(plane), "--format", "machine"])
        second = runner.invoke(cli, ["check", str(plane), "--format", "machine"])
        assert first.stdout == second.stdout

    def test_oracle_flag(self, runner: CliRunner, plane: Path):
        result = runner.invoke(cli, ["check", str(plane), "--only", "psi2", "--oracle"])
        assert result.exit_code == EXIT_OK

    def test_failed_check(self, runner: CliRunner, plane: Path, monkeypatch):
        def broken(self, M):
            raise AuditError("resolution has a constant entry")

        monkeypatch.setattr("app.services.theorem_service.ResolutionService.resolve", broken)
        result = runner.invoke(cli, ["check", str(plane), "--only", "beh", "--format", "machine"])
        assert result.exit_code == EXIT_FAILED
        [record] = json.loads(result.stdout)["records"]
        assert record["verdict"] == "fails"

    def test_syntax_error(self, runner: CliRunner, tmp_path: Path):
        path = tmp_path / "broken.inst"
        path.write_text("ring R = F(101)[x,y]\nmodule M = coker [[x + ]]\n", encoding="utf-8")
        result = runner.invoke(cli, ["check", str(path)])
        assert result.exit_code == EXIT_INPUT
        assert "line 2, column 23" in result.stderr

    @pytest.mark.parametrize(
        "text,message",
        [
            ("ring R = Q[x,y]\nmodule M = coker [[1/0*x]]\n", "zero denominator"),
            ("ring R = F(101)[x,y]\nmodule M = coker [[1]]\n", "module is zero"),
        ],
    )
    def test_input_errors_exit_two(self, runner: CliRunner, tmp_path: Path, text: str, message: str):
        path = tmp_path / "bad.inst"
        path.write_text(text, encoding="utf-8")
        result = runner.invoke(cli, ["check", str(path)])
        assert result.exit_code == EXIT_INPUT
        assert "line 2" in result.stderr
        assert message in result.stderr

    def test_missing_file(self, runner: CliRunner, tmp_path: Path):
        result = runner.invoke(cli, ["check", str(tmp_path / "absent.inst")])
        assert result.exit_code == EXIT_INPUT


@pytest.mark.integration
class TestDuttaCommand:
    def test_declared(self, runner: CliRunner, tmp_path: Path):
        path = tmp_path / "frobenius.inst"
        path.write_text(FROBENIUS, encoding="utf-8")
        result = runner.invoke(cli, ["dutta", str(path), "--format", "machine"])
        assert result.exit_code == EXIT_OK
        [record] = json.loads(result.stdout)["records"]
        assert record["verdict"] == "holds"
        assert record["dutta"][0]["terms"] == ["1/1", "1/1"]

    def test_every_target_when_none_declared(self, runner: CliRunner, tmp_path: Path):
        path = tmp_path / "bare.inst"
        path.write_text("ring R = F(3)[x]\nmodule k = coker [[x]]\ncomplex K = koszul(x)\n", encoding="utf-8")
        result = runner.invoke(cli, ["dutta", str(path), "--emax", "1", "--format", "machine"])
        assert result.exit_code == EXIT_OK
        records = json.loads(result.stdout)["records"]
        assert [r["target"] for r in records] == ["k", "K"]
        assert all(r["name"] == "dutta" for r in records)

    def test_characteristic_zero_is_inapplicable(self, runner: CliRunner, tmp_path: Path):
        path = tmp_path / "rational.inst"
        path.write_text("ring R = Q[x]\nmodule k = coker [[x]]\n", encoding="utf-8")
        result = runner.invoke(cli, ["dutta", str(path), "--format", "text"])
        assert result.exit_code == EXIT_OK
        assert "inapplicable" in result.stdout
        assert "positive characteristic" in result.stdout


@pytest.mark.integration
class TestSuiteCommand:
    def test_directory(self, runner: CliRunner, tmp_path: Path):
        (tmp_path / "a.inst").write_text(PLANE, encoding="utf-8")
        (tmp_path / "b.inst").write_text(FROBENIUS, encoding="utf-8")
        result = runner.invoke(cli, ["suite", str(tmp_path), "--format", "machine"])
        assert result.exit_code == EXIT_OK
        reports = json.loads(result.stdout)
        assert [r["instance"] for r in reports] == ["a.inst", "b.inst"]

    def test_empty_directory(self, runner: CliRunner, tmp_path: Path):
        result = runner.invoke(cli, ["suite", str(tmp_path)])
        assert result.exit_code == EXIT_INPUT
        assert "no instance files" in result.stderr
