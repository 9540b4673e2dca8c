"""Deterministic JSON and CSV renderings of reports, certificates and transcripts."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict
from fractions import Fraction

from .bounds import BoundReport, Section4Row
from .certify import Certificate, Step
from .proofs import ProofTranscript

CSV_COLUMNS = ("n", "ell", "v", "source", "bound_num", "bound_den", "slack")


def fmt_rational(x) -> str:
    """``num/den`` in lowest terms; integers without a denominator."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else fmt_rational(x)
    if isinstance(x, int):
        return int(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(doc) -> str:
    return json.dumps(jsonable(doc), indent=2) + "\n"


def step_dict(s: Step) -> dict:
    return {"description": s.description, "relation": s.relation, "lhs": s.lhs, "rhs": s.rhs,
            "slack": s.slack, "holds": s.holds}


def certificate_dict(c: Certificate) -> dict:
    return {
        "theorem": c.theorem,
        "code": c.code,
        "ordering": c.ordering.to_dict(),
        "v": c.v,
        "virtual_dims": c.virtual_dims,
        "lhs": c.lhs,
        "rhs": c.rhs,
        "slack": c.slack,
        "holds": c.holds,
        "terms": c.terms,
        "steps": [step_dict(s) for s in c.steps],
    }


def transcript_dict(t: ProofTranscript) -> dict:
    return {
        "proof": t.proof_id,
        "code": t.code,
        "holds": t.holds,
        "final": {"lhs": t.final_lhs, "rhs": t.final_rhs, "slack": t.final_rhs - t.final_lhs,
                  "statement": "3B <= sum_j H(W_j) + sum_{i<j} H(S_i_j)"},
        "checks": t.checks,
        "steps": [step_dict(s) for s in t.steps],
    }


def bound_report_csv(report: BoundReport, B=None) -> str:
    """One row per entry; ``slack`` is bound - B when a file size B is given, else empty."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for e in report.entries:
        slack = "" if B is None else fmt_rational(e.value - B)
        w.writerow([e.n, e.ell, e.v, e.source, e.value.numerator, e.value.denominator, slack])
    return buf.getvalue()


def section4_dict(row: Section4Row) -> dict:
    d = asdict(row)
    d["discrepancy"] = (
        "exact improvement differs from the quoted p^2/6; they agree only to leading order in p"
        if not row.matches_claim else "none")
    d["d14_reference"] = f"{row.d14_reference} (quoted reference value, not recomputed)"
    return d


def rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt_rational(x) if isinstance(x, Fraction) else x for x in r])
    return buf.getvalue()
