"""Report Service - text and machine renderings of reports and resolutions.

Machine output is JSON with sorted keys and no timestamps, so two runs on
the same input produce identical bytes.
"""

import json
from typing import Any, Dict, List, Sequence

from app.models.betti import BettiTable
from app.models.resolution import Resolution
from app.schemas.report import BettiTableRecord, CheckRecord, VerificationReport


def to_json(document: Any) -> str:
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(_format_value(v) for v in value) + ")"
    return str(value)


def _table_from_record(record: BettiTableRecord) -> BettiTable:
    return BettiTable({(i, j): b for i, j, b in record.entries})


def _indent(text: str, prefix: str = "    ") -> List[str]:
    return [prefix + line for line in text.splitlines()]


def render_record(record: CheckRecord) -> List[str]:
    lines = [f"[{record.name}] {record.target}: {record.verdict.value}"]
    if record.reason:
        lines.append(f"  reason: {record.reason}")
    for key, value in record.quantities.items():
        lines.append(f"  {key} = {_format_value(value)}")
    if record.betti is not None:
        lines.append("  betti:")
        lines += _indent(_table_from_record(record.betti).render())
    for q in record.inequalities:
        mark = "ok" if q.holds else "VIOLATED"
        lines.append(f"  {q.label}: {q.lhs} <= {q.rhs} {mark}")
    for seq in record.dutta:
        lines.append(
            f"  {seq.label}: raw ({', '.join(map(str, seq.raw))}) "
            f"normalised ({', '.join(seq.terms)})"
        )
    if record.witness is not None:
        lines.append(f"  witness: ({', '.join(record.witness)})")
    for note in record.notes:
        lines.append(f"  note: {note}")
    return lines


def render_text(report: VerificationReport) -> str:
    lines = [f"instance: {report.instance}", f"ring: {report.ring}"]
    if report.dimension is not None:
        lines.append(f"dimension: {report.dimension}")
    for record in report.records:
        lines.append("")
        lines += render_record(record)
    return "\n".join(lines) + "\n"


def render_machine(reports: Sequence[VerificationReport]) -> str:
    """One JSON document; a single report is not wrapped in a list."""
    documents = [r.model_dump(mode="json") for r in reports]
    return to_json(documents[0] if len(documents) == 1 else documents)


def resolution_document(name: str, resolution: Resolution, with_maps: bool = True) -> Dict[str, Any]:
    document: Dict[str, Any] = {
        "module": name,
        "betti": BettiTableRecord.from_table(resolution.betti).model_dump(mode="json"),
    }
    if with_maps:
        F = resolution.complex
        document["twists"] = {str(i): list(m.twists) for i, m in F.modules.items()}
        document["differentials"] = {
            str(i): [[str(entry) for entry in row] for row in F.differential(i).matrix()]
            for i in range(F.lo + 1, F.hi + 1)
        }
    return document


def render_resolution_text(name: str, resolution: Resolution, with_maps: bool = True) -> str:
    F = resolution.complex
    lines = [f"{name}: betti {resolution.betti.row}, total {resolution.betti.total}"]
    lines += _indent(resolution.betti.render(), "  ")
    if with_maps:
        for i in range(F.lo + 1, F.hi + 1):
            d = F.differential(i)
            lines.append(f"  d_{i}: F_{i}{list(d.source.twists)} -> F_{i - 1}{list(d.target.twists)}")
            for row in d.matrix():
                lines.append("    [" + ", ".join(str(entry) for entry in row) + "]")
    return "\n".join(lines) + "\n"
