"""Instance Parser - the line grammar of instance files.

    ring R = F(101)[x,y]            or  ring R = Q[x,y]
    quotient (x*y)
    module M = coker [[x - y]]      [twists target [0] source [1]]
    twists target [0] source [1]    (may follow a module line instead)
    complex F = koszul(x, y) | resolve(M) | shift(F, 1) | sum(F, G)
    check beh on M emax=2 cap=5

`#` starts a comment. Columns in error messages are 1-based.
"""

import re
from pathlib import Path
from typing import List, Optional, Tuple

import structlog
from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import (
    AlgebraError,
    InhomogeneousError,
    InstanceSemanticError,
    InstanceSyntaxError,
)
from app.models.field import CoefficientField
from app.models.graded_map import GradedMap
from app.models.instance import ComplexDefinition, ComplexKind, ProblemInstance
from app.models.monomial import order_from_name
from app.models.polynomial import Polynomial, PolynomialRing, parse_polynomial
from app.models.presentation import ModulePresentation
from app.models.ring import GradedRing
from app.schemas.instance import CheckName, CheckRequest

logger = structlog.get_logger(__name__)

_NAME = r"[A-Za-z_][A-Za-z_0-9]*"
_RING = re.compile(rf"ring\s+({_NAME})\s*=\s*(?:F\(\s*(\d+)\s*\)|(Q))\s*\[([^\]]*)\]\s*$")
_QUOTIENT = re.compile(r"quotient\s*\((.*)\)\s*$")
_MODULE = re.compile(rf"module\s+({_NAME})\s*=\s*coker\s*(?=\[)")
_TWISTS = re.compile(r"twists\s+target\s*\[([^\]]*)\](?:\s*source\s*\[([^\]]*)\])?\s*$")
_COMPLEX = re.compile(rf"complex\s+({_NAME})\s*=\s*({_NAME})\s*\((.*)\)\s*$")
_CHECK = re.compile(rf"check\s+({_NAME})\s+on\s+({_NAME})(.*)$")
_OPTION = re.compile(rf"\s*({_NAME})\s*=\s*(-?\d+)")

Entry = Tuple[str, int]


def _split_top(text: str, offset: int) -> List[Entry]:
    """Split on commas outside parentheses; returns (piece, column of piece)."""
    pieces: List[Entry] = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            pieces.append((text[start:i], offset + start))
            start = i + 1
    pieces.append((text[start:], offset + start))
    result = []
    for piece, column in pieces:
        stripped = piece.strip()
        result.append((stripped, column + len(piece) - len(piece.lstrip())))
    if len(result) == 1 and not result[0][0]:
        return []
    return result


class _Parser:
    def __init__(self, text: str, name: str):
        self.text = text
        self.name = name
        self.ring_name: Optional[str] = None
        self.ambient: Optional[PolynomialRing] = None
        self.relations: List[Polynomial] = []
        self.ring: Optional[GradedRing] = None
        self.instance: Optional[ProblemInstance] = None
        self.pending: Optional[Tuple[str, List[List[Entry]], int]] = None

    # ----- helpers -----

    def polynomial(self, text: str, line: int, column: int) -> Polynomial:
        assert self.ambient is not None
        try:
            return parse_polynomial(text, self.ambient)
        except AlgebraError as err:
            inner = getattr(err, "column", 1)
            raise InstanceSyntaxError(str(err), line, column + inner - 1) from err

    def integers(self, text: str, line: int, column: int) -> List[int]:
        values = []
        for piece, col in _split_top(text, column):
            if not re.fullmatch(r"-?\d+", piece):
                raise InstanceSyntaxError(f"expected an integer, got {piece!r}", line, col)
            values.append(int(piece))
        return values

    def require_ring(self, line: Optional[int]) -> GradedRing:
        if self.ambient is None:
            raise InstanceSemanticError("no ring declared", line)
        if self.ring is None:
            try:
                self.ring = GradedRing(self.ambient, self.relations)
            except AlgebraError as err:
                raise InstanceSemanticError(str(err), line) from err
            self.instance = ProblemInstance(self.name, self.ring_name or "R", self.ring)
        return self.ring

    def check_new_name(self, name: str, line: int) -> None:
        assert self.instance is not None
        if name in self.instance.modules or name in self.instance.complexes or name == self.ring_name:
            raise InstanceSemanticError(f"name {name!r} is already defined", line)

    # ----- statements -----

    def parse(self) -> ProblemInstance:
        for number, raw in enumerate(self.text.splitlines(), start=1):
            content = raw.split("#", 1)[0].rstrip()
            if not content.strip():
                continue
            indent = len(content) - len(content.lstrip())
            body = content.strip()
            if body.startswith("twists"):
                self.twists_line(body, number, indent)
                continue
            self.flush_module()
            keyword = body.split(None, 1)[0]
            handler = {
                "ring": self.ring_line,
                "quotient": self.quotient_line,
                "module": self.module_line,
                "complex": self.complex_line,
                "check": self.check_line,
            }.get(keyword)
            if handler is None:
                raise InstanceSyntaxError(f"unknown statement {keyword!r}", number, indent + 1)
            handler(body, number, indent)
        self.flush_module()
        if self.ambient is None:
            raise InstanceSemanticError("no ring declared", None)
        self.require_ring(None)
        assert self.instance is not None
        return self.instance

    def ring_line(self, body: str, line: int, indent: int) -> None:
        if self.ambient is not None:
            raise InstanceSemanticError("only one ring may be declared", line)
        match = _RING.match(body)
        if match is None:
            raise InstanceSyntaxError("expected 'ring <name> = F(<p>)[<vars>]' or 'Q[<vars>]'", line, indent + 1)
        name, p, _, variables = match.groups()
        pieces = _split_top(variables, indent + match.start(4) + 1)
        names = [v for v, _ in pieces]
        for v, col in pieces:
            if not re.fullmatch(_NAME, v):
                raise InstanceSyntaxError(f"bad variable name {v!r}", line, col)
        try:
            field = CoefficientField(int(p)) if p is not None else CoefficientField.rationals()
            self.ambient = PolynomialRing(field, tuple(names), order_from_name(settings.DEFAULT_MONOMIAL_ORDER))
        except AlgebraError as err:
            raise InstanceSemanticError(str(err), line) from err
        self.ring_name = name

    def quotient_line(self, body: str, line: int, indent: int) -> None:
        if self.ambient is None:
            raise InstanceSemanticError("quotient before ring", line)
        if self.ring is not None:
            raise InstanceSemanticError("quotient must directly follow the ring", line)
        match = _QUOTIENT.match(body)
        if match is None:
            raise InstanceSyntaxError("expected 'quotient (<poly>, ...)'", line, indent + 1)
        for text, col in _split_top(match.group(1), indent + match.start(1) + 1):
            f = self.polynomial(text, line, col)
            if not f.is_homogeneous():
                raise InstanceSemanticError(f"inhomogeneous generator {f}", line)
            self.relations.append(f)

    def module_line(self, body: str, line: int, indent: int) -> None:
        self.require_ring(line)
        match = _MODULE.match(body)
        if match is None:
            raise InstanceSyntaxError("expected 'module <name> = coker [[...]]'", line, indent + 1)
        name = match.group(1)
        self.check_new_name(name, line)
        rows, rest, rest_column = self.matrix(body, match.end(), line, indent)
        twists = rest.strip() or None
        self.pending = (name, rows, line)
        if twists is not None:
            self.twists_line(twists, line, rest_column + len(rest) - len(rest.lstrip()) - 1)

    def matrix(self, body: str, start: int, line: int, indent: int) -> Tuple[List[List[Entry]], str, int]:
        """Parse '[[a, b], [c, d]]' starting at body[start]."""
        i = start

        def fail(message: str) -> InstanceSyntaxError:
            return InstanceSyntaxError(message, line, indent + i + 1)

        def skip() -> None:
            nonlocal i
            while i < len(body) and body[i].isspace():
                i += 1

        if i >= len(body) or body[i] != "[":
            raise fail("expected '['")
        i += 1
        rows: List[List[Entry]] = []
        while True:
            skip()
            if i < len(body) and body[i] == "]":
                i += 1
                break
            if i >= len(body) or body[i] != "[":
                raise fail("expected '[' opening a matrix row")
            i += 1
            begin = i
            depth = 0
            while i < len(body) and (body[i] != "]" or depth):
                if body[i] == "(":
                    depth += 1
                elif body[i] == ")":
                    depth -= 1
                i += 1
            if i >= len(body):
                raise fail("unterminated matrix row")
            rows.append(_split_top(body[begin:i], indent + begin + 1))
            i += 1
            skip()
            if i < len(body) and body[i] == ",":
                i += 1
                continue
            if i < len(body) and body[i] == "]":
                i += 1
                break
            raise fail("expected ',' or ']' in matrix")
        return rows, body[i:], indent + i + 1

    def twists_line(self, body: str, line: int, indent: int) -> None:
        if self.pending is None:
            raise InstanceSyntaxError("'twists' must follow a module", line, indent + 1)
        match = _TWISTS.match(body)
        if match is None:
            raise InstanceSyntaxError("expected 'twists target [..] source [..]'", line, indent + 1)
        self.flush_module(twists=(match, line, indent))

    def flush_module(self, twists: Optional[Tuple[re.Match, int, int]] = None) -> None:
        if self.pending is None:
            return
        name, rows, line = self.pending
        self.pending = None
        assert self.ambient is not None and self.instance is not None
        entries = [[self.polynomial(text, line, col) for text, col in row] for row in rows]
        ncols = {len(row) for row in entries}
        if len(ncols) > 1:
            raise InstanceSemanticError(f"module {name}: matrix rows have different lengths", line)
        target: List[int] = [0] * len(entries)
        source: Optional[List[int]] = None
        if twists is not None:
            match, tline, tindent = twists
            target = self.integers(match.group(1), tline, tindent + match.start(1) + 1)
            if match.group(2) is not None:
                source = self.integers(match.group(2), tline, tindent + match.start(2) + 1)
            if len(target) != len(entries):
                raise InstanceSemanticError(
                    f"module {name}: {len(target)} target twists for {len(entries)} rows", tline
                )
            width = ncols.pop() if ncols else 0
            if source is not None and len(source) != width:
                raise InstanceSemanticError(
                    f"module {name}: {len(source)} source twists for {width} columns", tline
                )
        try:
            phi = GradedMap.from_matrix(self.ambient, entries, target, source)
        except (InhomogeneousError, AlgebraError) as err:
            raise InstanceSemanticError(f"module {name}: {err}", line) from err
        module = ModulePresentation(self.instance.ring, phi)
        if module.is_zero():
            raise InstanceSemanticError(f"module {name}: module is zero", line)
        self.instance.modules[name] = module

    def complex_line(self, body: str, line: int, indent: int) -> None:
        self.require_ring(line)
        assert self.instance is not None
        match = _COMPLEX.match(body)
        if match is None:
            raise InstanceSyntaxError("expected 'complex <name> = <constructor>(...)'", line, indent + 1)
        name, constructor, args = match.groups()
        self.check_new_name(name, line)
        try:
            kind = ComplexKind(constructor)
        except ValueError:
            raise InstanceSyntaxError(
                f"unknown complex constructor {constructor!r}", line, indent + match.start(2) + 1
            ) from None
        pieces = _split_top(args, indent + match.start(3) + 1)
        if kind is ComplexKind.KOSZUL:
            elements = tuple(self.polynomial(text, line, col) for text, col in pieces)
            for y in elements:
                if not y.is_homogeneous():
                    raise InstanceSemanticError(f"inhomogeneous generator {y}", line)
            definition = ComplexDefinition(name, kind, elements=elements, line=line)
        elif kind is ComplexKind.RESOLVE:
            if len(pieces) != 1:
                raise InstanceSyntaxError("resolve takes one module", line, indent + match.start(3) + 1)
            module = pieces[0][0]
            if module not in self.instance.modules:
                raise InstanceSemanticError(f"unknown module {module!r}", line)
            definition = ComplexDefinition(name, kind, operands=(module,), line=line)
        elif kind is ComplexKind.SHIFT:
            if len(pieces) != 2 or not re.fullmatch(r"-?\d+", pieces[1][0]):
                raise InstanceSyntaxError("shift takes a complex and an integer", line, indent + match.start(3) + 1)
            operand = pieces[0][0]
            if operand not in self.instance.complexes:
                raise InstanceSemanticError(f"unknown complex {operand!r}", line)
            definition = ComplexDefinition(name, kind, operands=(operand,), shift=int(pieces[1][0]), line=line)
        else:
            if len(pieces) != 2:
                raise InstanceSyntaxError("sum takes two complexes", line, indent + match.start(3) + 1)
            for operand, _ in pieces:
                if operand not in self.instance.complexes:
                    raise InstanceSemanticError(f"unknown complex {operand!r}", line)
            definition = ComplexDefinition(
                name, kind, operands=(pieces[0][0], pieces[1][0]), line=line
            )
        self.instance.complexes[name] = definition

    def check_line(self, body: str, line: int, indent: int) -> None:
        self.require_ring(line)
        assert self.instance is not None
        match = _CHECK.match(body)
        if match is None:
            raise InstanceSyntaxError("expected 'check <name> on <target>'", line, indent + 1)
        check, target, rest = match.groups()
        try:
            name = CheckName(check)
        except ValueError:
            raise InstanceSyntaxError(f"unknown check {check!r}", line, indent + match.start(1) + 1) from None
        if target not in self.instance.modules and target not in self.instance.complexes:
            raise InstanceSemanticError(f"unknown target {target!r}", line)
        options = {}
        position = 0
        base = indent + match.start(3) + 1
        while position < len(rest) and rest[position:].strip():
            option = _OPTION.match(rest, position)
            if option is None:
                column = base + position + len(rest[position:]) - len(rest[position:].lstrip())
                raise InstanceSyntaxError("expected key=value", line, column)
            key = option.group(1)
            if key not in ("emax", "cap"):
                raise InstanceSyntaxError(f"unknown key {key!r}", line, base + option.start(1))
            options[key] = int(option.group(2))
            position = option.end()
        try:
            request = CheckRequest(name=name, target=target, line=line, **options)
        except ValidationError as err:
            raise InstanceSemanticError(f"bad option: {err.errors()[0]['msg']}", line) from err
        self.instance.checks.append(request)


def parse_instance(text: str, name: str = "<instance>") -> ProblemInstance:
    """Parse instance text.

    Raises:
        InstanceSyntaxError: text outside the grammar, with line and column
        InstanceSemanticError: well-formed text describing an invalid instance
    """
    instance = _Parser(text, name).parse()
    logger.debug(
        "instance_parsed",
        instance=name,
        modules=list(instance.modules),
        complexes=list(instance.complexes),
        checks=len(instance.checks),
    )
    return instance


def load_instance(path: Path) -> ProblemInstance:
    return parse_instance(Path(path).read_text(encoding="utf-8"), name=Path(path).name)
