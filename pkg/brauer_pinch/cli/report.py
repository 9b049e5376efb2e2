"""Serialize Brauer reports: canonical JSON (sorted keys, two-space indent, trailing newline) or aligned text."""
from __future__ import annotations

import json
from logging import getLogger
from typing import TYPE_CHECKING

from brauer_pinch.cli.models import AppliedTheorem, IndexFactsRecord, ReportDocument
from brauer_pinch.errors import OracleNotApplicableError, OracleTooLargeError
from brauer_pinch.oracle import OracleVerdict, verify_report
from brauer_pinch.theorems import THEOREM_CITATIONS


if TYPE_CHECKING:
    from brauer_pinch.cli.models import ConfigDocument
    from brauer_pinch.oracle import OracleCaps
    from brauer_pinch.pinchmodel import PinchingConfig
    from brauer_pinch.theorems import BrauerReport
    from brauer_pinch.types import OutputFormatStr


logger = getLogger("brauer_pinch.cli.report")


def run_oracle(config: PinchingConfig, report: BrauerReport, caps: OracleCaps) -> OracleVerdict:
    """Verify a report by enumeration; configurations outside the oracle's reach are skipped, not passed."""
    try:
        return verify_report(config, report, caps)

    except (OracleNotApplicableError, OracleTooLargeError) as e:
        logger.info("Oracle skipped: %s", e)
        return OracleVerdict(status="skipped", reason=str(e))


def build_report_document(
    document: ConfigDocument,
    report: BrauerReport,
    verdict: OracleVerdict | None = None,
) -> ReportDocument:
    """Pair a report with the document it was computed from."""
    notes: list[str] = []
    if verdict is None:
        status = "skipped"
    else:
        status = verdict.status
        if verdict.reason:
            notes.append(verdict.reason)
        notes.extend(f"{d.field}: expected order {d.expected}, reported {d.reported}" for d in verdict.discrepancies)

    return ReportDocument(
        input_echo=document.echo(),
        intersection_product=str(report.intersection_product),
        amitsur_pinched=str(report.amitsur_pinched),
        amitsur_quotient=str(report.amitsur_quotient),
        coker_injection=str(report.coker_injection),
        ker_phi1=str(report.ker_phi1),
        ker_phi1_split=report.ker_phi1_split,
        h2_mu=str(report.h2_mu),
        coker_phi_a=str(report.coker_phi_a),
        br1_pinched=str(report.br1_pinched),
        index_facts=IndexFactsRecord(**report.index_facts.model_dump()),
        applied_theorems=[AppliedTheorem(tag=tag, citation=THEOREM_CITATIONS[tag]) for tag in report.applied_theorems],
        caveats=list(report.caveats),
        oracle_status=status,
        oracle_notes=notes,
    )


def to_json(report_document: ReportDocument) -> str:
    """Canonical JSON form; identical reports give byte-identical output."""
    payload = report_document.model_dump(by_alias=True, mode="json")
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


_TEXT_ROWS = (
    ("Br(Y~/Y)", "intersection_product"),
    ("B(X/k)", "amitsur_pinched"),
    ("B(X~/k)/B(X/k)", "amitsur_quotient"),
    ("coker of injection", "coker_injection"),
    ("ker phi_1*", "ker_phi1"),
    ("H^2(k, mu)", "h2_mu"),
    ("coker phi_a*", "coker_phi_a"),
    ("Br_1 X", "br1_pinched"),
)


def to_text(report_document: ReportDocument) -> str:
    """Aligned plain-text form with the applied results and their citations."""
    width = max(len(label) for label, _ in _TEXT_ROWS)
    lines = [f"{label:<{width}}  {getattr(report_document, attr)}" for label, attr in _TEXT_ROWS]
    if report_document.ker_phi1_split:
        lines.append(f"{'':<{width}}  (ker phi_1* is the fiber-intersection product)")

    facts = report_document.index_facts.model_dump(by_alias=True)
    lines.append("")
    lines.extend(f"{name:<{width}}  {value}" for name, value in facts.items() if value is not None)

    lines.append("")
    lines.append("Applied results:")
    lines.extend(f"  {t.tag}: {t.citation}" for t in report_document.applied_theorems)

    if report_document.caveats:
        lines.append("")
        lines.append("Caveats:")
        lines.extend(f"  - {caveat}" for caveat in report_document.caveats)

    lines.append("")
    lines.append(f"Oracle: {report_document.oracle_status}")
    lines.extend(f"  {note}" for note in report_document.oracle_notes)
    return "\n".join(lines) + "\n"


def render(report_document: ReportDocument, output_format: OutputFormatStr) -> str:
    if output_format == "text":
        return to_text(report_document)
    return to_json(report_document)
