"""Graded Betti tables."""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Tuple


@dataclass(frozen=True)
class BettiTable:
    """β_{i,j}: number of generators of F_i in internal degree j."""

    entries: Mapping[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (i, j), value in self.entries.items():
            if value < 0:
                raise ValueError(f"negative Betti number at ({i}, {j})")
            if value:
                clean[(int(i), int(j))] = int(value)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @classmethod
    def from_twists(cls, modules: Mapping[int, Tuple[int, ...]]) -> "BettiTable":
        """Build from homological degree -> twists of the free module."""
        entries: Dict[Tuple[int, int], int] = {}
        for i, twists in modules.items():
            for t in twists:
                entries[(i, t)] = entries.get((i, t), 0) + 1
        return cls(entries)

    def __hash__(self) -> int:
        return hash(tuple(self.entries.items()))

    def betti(self, i: int) -> int:
        return sum(v for (h, _), v in self.entries.items() if h == i)

    @property
    def projective_dimension(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    @property
    def row(self) -> Tuple[int, ...]:
        """(β_0, ..., β_pd)."""
        return tuple(self.betti(i) for i in range(self.projective_dimension + 1))

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def is_empty(self) -> bool:
        return not self.entries

    def hilbert_numerator(self) -> Dict[int, int]:
        """Σ (-1)^i β_{i,j} t^j as degree -> coefficient."""
        poly: Dict[int, int] = {}
        for (i, j), v in self.entries.items():
            poly[j] = poly.get(j, 0) + (-1) ** i * v
        return {j: c for j, c in sorted(poly.items()) if c}

    def render(self) -> str:
        """Macaulay-style grid: columns are homological degrees, rows j - i."""
        if not self.entries:
            return "total:"
        pd = self.projective_dimension
        slants = sorted({j - i for i, j in self.entries})
        header = ["", *[str(i) for i in range(pd + 1)]]
        lines: List[List[str]] = [header, ["total:", *[str(b) for b in self.row]]]
        for s in range(slants[0], slants[-1] + 1):
            cells = [str(self.entries.get((i, i + s), ".")) for i in range(pd + 1)]
            cells = [c if c != "0" else "." for c in cells]
            lines.append([f"{s}:", *cells])
        widths = [max(len(line[k]) for line in lines) for k in range(len(header))]
        out = []
        for line in lines:
            first = line[0].rjust(widths[0])
            rest = " ".join(cell.rjust(widths[k + 1]) for k, cell in enumerate(line[1:]))
            out.append(f"{first} {rest}".rstrip())
        return "\n".join(out)

    def __str__(self) -> str:
        return self.render()
