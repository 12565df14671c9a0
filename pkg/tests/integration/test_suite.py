"""Acceptance runs over the bundled instance suite."""
import pytest
from click.testing import CliRunner

from app.main import EXIT_OK, cli
from app.schemas.report import Verdict
from app.services.homology_service import (
    homology_lengths,
    homology_lengths_bruteforce,
    oracle_degree_bound,
)
from app.services.instance_parser import load_instance
from app.services.theorem_service import TheoremService
from tests.conftest import SUITE_DIR

SUITE = sorted(SUITE_DIR.glob("*.inst"))


async def _run(name: str):
    return await TheoremService(oracle=False).run(load_instance(SUITE_DIR / name))


def _records(report):
    return {(r.name, r.target): r for r in report.records}


@pytest.mark.integration
@pytest.mark.slow
@pytest.mark.parametrize("path", SUITE, ids=lambda p: p.stem)
async def test_no_check_fails(path):
    report = await TheoremService(oracle=False).run(load_instance(path))
    assert report.records
    assert not report.failed, [r.model_dump() for r in report.records if r.verdict is Verdict.FAILS]


@pytest.mark.integration
@pytest.mark.slow
class TestSuiteValues:
    async def test_regular_dim2(self):
        records = _records(await _run("regular_dim2.inst"))
        assert records[("beh", "Q")].quantities["total"] == 6
        assert records[("equality", "Q")].verdict is Verdict.INAPPLICABLE
        assert set(records[("equality", "C")].witness) == {"x^2", "y"}
        assert records[("psi2", "N")].quantities["psi2_euler"] == 0
        assert records[("psi2", "F")].quantities["psi2_euler"] == 12

    async def test_regular_dim3(self):
        records = _records(await _run("regular_dim3.inst"))
        assert records[("beh", "k")].betti.row == [1, 3, 3, 1]
        assert records[("psi2", "K")].quantities["psi2_euler"] == 8

    async def test_regular_dim4(self):
        records = _records(await _run("regular_dim4.inst"))
        binomial = records[("binomial", "k")]
        assert [(q.lhs, q.rhs) for q in binomial.inequalities] == [
            (1, 1), (4, 4), (6, 6), (4, 4), (1, 1)
        ]

    async def test_hypersurfaces(self):
        xy = _records(await _run("hypersurface_xy.inst"))
        assert xy[("equality", "M")].verdict is Verdict.HOLDS
        assert xy[("psi2", "F")].quantities["psi2_euler"] == 4
        cone = _records(await _run("hypersurface_cone.inst"))
        assert cone[("beh", "M")].quantities["total"] == 4
        assert cone[("equality", "M")].verdict is Verdict.HOLDS

    async def test_complete_intersection(self):
        records = _records(await _run("complete_intersection.inst"))
        assert records[("psi2", "M")].quantities["psi2_euler"] == 16
        assert records[("equality", "M")].verdict is Verdict.HOLDS

    async def test_characteristic_two(self):
        records = _records(await _run("characteristic_two.inst"))
        assert records[("beh", "k")].verdict is Verdict.HOLDS
        assert records[("psi2", "k")].verdict is Verdict.INAPPLICABLE

    @pytest.mark.parametrize(
        "name,target,terms",
        [
            ("frobenius_f3.inst", "K", ["1/1", "1/1", "1/1"]),
            ("frobenius_f3.inst", "Q", ["3/1", "3/1"]),
            ("frobenius_f3_hypersurface.inst", "M", ["2/1", "2/1", "2/1"]),
            ("frobenius_f5.inst", "C", ["2/1", "2/1", "2/1"]),
            ("frobenius_f7.inst", "A", ["2/1", "2/1", "2/1"]),
        ],
    )
    async def test_dutta_sequences(self, name, target, terms):
        record = _records(await _run(name))[("dutta", target)]
        assert record.verdict is Verdict.HOLDS
        assert record.dutta[0].terms == terms


@pytest.mark.integration
@pytest.mark.slow
class TestSuiteConsistency:
    @pytest.mark.parametrize("path", SUITE, ids=lambda p: p.stem)
    async def test_tensor_equality_matches_extracted_sequence(self, path):
        """Σ ℓ H_i(F ⊗ M) = ℓ(M)·Σβ_i exactly when a regular sequence is extracted."""
        records = _records(await TheoremService(oracle=False).run(load_instance(path)))
        for (name, target), beh in records.items():
            if name != "beh" or "tensor_equality" not in beh.quantities:
                continue
            equality = records.get(("equality", target))
            if equality is None:
                continue
            extracted = equality.verdict is Verdict.HOLDS and bool(equality.witness)
            assert beh.quantities["tensor_equality"] is extracted, target

    @pytest.mark.parametrize("path", SUITE, ids=lambda p: p.stem)
    def test_presentation_path_matches_brute_force(self, path):
        """Gröbner homology lengths agree with graded linear algebra on every target."""
        instance = load_instance(path)
        service = TheoremService(oracle=False)
        for name in list(instance.modules) + list(instance.complexes):
            F, _ = service.complex_target(instance, name)
            expected = homology_lengths_bruteforce(F, oracle_degree_bound(F))
            assert homology_lengths(F, oracle=False) == expected, name

    def test_machine_output_is_deterministic(self):
        """Two suite runs print byte-identical documents."""
        try:
            runner = CliRunner(mix_stderr=False)
        except TypeError:
            runner = CliRunner()
        first = runner.invoke(cli, ["suite", str(SUITE_DIR), "--format", "machine"])
        second = runner.invoke(cli, ["suite", str(SUITE_DIR), "--format", "machine"])
        assert first.exit_code == second.exit_code == EXIT_OK
        assert first.stdout_bytes == second.stdout_bytes
