"""Unit tests for the instance file parser."""
import pytest

from app.core.exceptions import InstanceSemanticError, InstanceSyntaxError
from app.models.instance import ComplexKind
from app.schemas.instance import CheckName
from app.services.instance_parser import load_instance, parse_instance

EXAMPLE = """\
ring R = F(101)[x,y]
quotient (x*y)
module M = coker [[x - y]]
complex F = resolve(M)
check psi2 on F
"""


class TestParseInstance:
    def test_example(self):
        instance = parse_instance(EXAMPLE, name="example")
        assert instance.name == "example"
        assert instance.ring_name == "R"
        assert str(instance.ring) == "F(101)[x,y]/(x*y)"
        assert list(instance.modules) == ["M"]
        assert instance.modules["M"].rank == 1
        F = instance.complexes["F"]
        assert F.kind is ComplexKind.RESOLVE
        assert F.operands == ("M",)
        assert instance.module_of("F") == "M"
        [request] = instance.checks
        assert request.name is CheckName.PSI2
        assert request.target == "F"
        assert request.line == 5

    def test_comments_and_blank_lines(self):
        text = "# header\n\nring R = Q[x]   # rationals\nmodule k = coker [[x]]  # residue field\n"
        instance = parse_instance(text)
        assert instance.ring.characteristic == 0
        assert list(instance.modules) == ["k"]

    def test_default_checks(self):
        instance = parse_instance("ring R = F(7)[x,y]\nmodule k = coker [[x, y]]\nmodule A = coker [[x]]\n")
        checks = instance.effective_checks()
        assert [(c.name.value, c.target) for c in checks] == [
            ("beh", "k"),
            ("binomial", "k"),
            ("equality", "k"),
            ("beh", "A"),
            ("binomial", "A"),
            ("equality", "A"),
        ]

    def test_twists_on_following_line(self):
        text = "ring R = Q[x,y]\nmodule M = coker [[x, y]]\n  twists target [1] source [2, 2]\n"
        M = parse_instance(text).modules["M"]
        assert M.twists == (1,)
        assert M.presentation.source.twists == (2, 2)

    def test_twists_on_module_line(self):
        text = "ring R = Q[x,y]\nmodule M = coker [[x], [y]] twists target [0, 0]\n"
        M = parse_instance(text).modules["M"]
        assert M.rank == 2
        assert M.presentation.source.twists == (1,)

    def test_complex_constructors(self):
        text = (
            "ring R = F(101)[x,y]\n"
            "module Q = coker [[x^2, x*y, y^2]]\n"
            "complex K = koszul(x, y^2)\n"
            "complex F = resolve(Q)\n"
            "complex G = shift(F, -1)\n"
            "complex N = sum(F, G)\n"
            "check psi2 on N\n"
            "check dutta on K emax=3 cap=4\n"
        )
        instance = parse_instance(text)
        K = instance.complexes["K"]
        assert K.kind is ComplexKind.KOSZUL
        assert [str(y) for y in K.elements] == ["x", "y^2"]
        assert instance.complexes["G"].shift == -1
        assert instance.complexes["N"].operands == ("F", "G")
        dutta = instance.checks[1]
        assert (dutta.emax, dutta.cap) == (3, 4)

    def test_load_instance_uses_file_name(self, tmp_path):
        path = tmp_path / "crossing.inst"
        path.write_text(EXAMPLE, encoding="utf-8")
        assert load_instance(path).name == "crossing.inst"

    def test_bundled_suite_parses(self, suite_dir):
        for path in sorted(suite_dir.glob("*.inst")):
            instance = load_instance(path)
            assert instance.modules or instance.complexes


class TestSyntaxErrors:
    @pytest.mark.parametrize(
        "text,line,column",
        [
            ("ring R = F(101)[x,y]\nmodule M = coker [[x + ]]\n", 2, 23),
            ("ring R = F(101)[x,y]\nmodul M = coker [[x]]\n", 2, 1),
            ("ring R = F(101)[x,y]\nmodule M = coker [[x]]\ncheck foo on M\n", 3, 7),
            ("ring R = F(101)[x,y]\nmodule M = coker [[x]]\ncheck beh on M depth=2\n", 3, 16),
            ("ring R = F(101)[x,y]\n  twists target [0]\n", 2, 3),
            ("ring R = F(101)[x,y]\nmodule M = coker [[x]\n", 2, 22),
            ("ring R = F(101)[x,y]\ncomplex K = cone(x)\n", 2, 13),
            ("ring R = Q[x,y]\nmodule M = coker [[1/0*x]]\n", 2, 22),
        ],
    )
    def test_position(self, text, line, column):
        with pytest.raises(InstanceSyntaxError) as info:
            parse_instance(text)
        assert (info.value.line, info.value.column) == (line, column)
        assert str(info.value).startswith(f"line {line}, column {column}:")

    def test_bad_ring_line(self):
        with pytest.raises(InstanceSyntaxError):
            parse_instance("ring R = Z[x]\n")

    def test_zero_denominator(self):
        with pytest.raises(InstanceSyntaxError, match="zero denominator"):
            parse_instance("ring R = Q[x,y]\nmodule M = coker [[1/0*x]]\n")


class TestSemanticErrors:
    def test_inhomogeneous_entry(self):
        with pytest.raises(InstanceSemanticError) as info:
            parse_instance("ring R = F(101)[x,y]\nmodule M = coker [[x, x + y^2]]\n")
        assert "module M" in str(info.value)
        assert "entry (1,2)" in str(info.value)
        assert info.value.line == 2

    def test_inhomogeneous_column(self):
        """Entries of one column must agree in degree after twisting."""
        with pytest.raises(InstanceSemanticError, match="entry"):
            parse_instance("ring R = F(101)[x,y]\nmodule M = coker [[x], [y^2]]\n")

    def test_duplicate_name(self):
        text = "ring R = F(101)[x]\nmodule M = coker [[x]]\nmodule M = coker [[x^2]]\n"
        with pytest.raises(InstanceSemanticError, match="already defined"):
            parse_instance(text)

    def test_unknown_target(self):
        with pytest.raises(InstanceSemanticError, match="unknown target 'N'"):
            parse_instance("ring R = F(101)[x]\nmodule M = coker [[x]]\ncheck beh on N\n")

    def test_unknown_module_in_resolve(self):
        with pytest.raises(InstanceSemanticError, match="unknown module"):
            parse_instance("ring R = F(101)[x]\ncomplex F = resolve(M)\n")

    def test_negative_emax(self):
        with pytest.raises(InstanceSemanticError, match="bad option"):
            parse_instance("ring R = F(101)[x]\nmodule M = coker [[x]]\ncheck dutta on M emax=-1\n")

    def test_no_ring(self):
        with pytest.raises(InstanceSemanticError, match="no ring declared"):
            parse_instance("module M = coker [[x]]\n")
        with pytest.raises(InstanceSemanticError, match="no ring declared"):
            parse_instance("# nothing here\n")

    def test_composite_characteristic(self):
        with pytest.raises(InstanceSemanticError, match="prime"):
            parse_instance("ring R = F(4)[x]\n")

    def test_twist_count_mismatch(self):
        text = "ring R = Q[x,y]\nmodule M = coker [[x, y]]\n  twists target [0, 1]\n"
        with pytest.raises(InstanceSemanticError, match="target twists"):
            parse_instance(text)

    def test_quotient_after_module(self):
        text = "ring R = Q[x,y]\nmodule M = coker [[x]]\nquotient (x*y)\n"
        with pytest.raises(InstanceSemanticError, match="quotient"):
            parse_instance(text)

    @pytest.mark.parametrize(
        "matrix",
        ["[[1]]", "[[x, 1]]", "[[1, 0], [0, 1]]"],
    )
    def test_zero_module(self, matrix):
        """A presentation whose relations kill every generator is rejected."""
        with pytest.raises(InstanceSemanticError, match="module is zero") as info:
            parse_instance(f"ring R = F(101)[x,y]\nmodule M = coker {matrix}\n")
        assert info.value.line == 2
