"""Machine-readable reports: a comment header, then CSV records with exact and decimal columns."""

from __future__ import annotations

import csv
import hashlib
import io
import json

from . import __version__
from .diagnostics.audit import AuditLine, FamilyAudit
from .diagnostics.covering import CoveringResult
from .diagnostics.frechet import FrechetFailure
from .numeric import decimal_str, exact_str
from .rademacher import ExampleReport

FIELDS = ("record", "member", "partition", "step", "label", "lhs_exact", "lhs_decimal", "rhs_exact", "rhs_decimal", "pass")


def _num(prefix: str, x) -> dict:
    if x is None or x == "":
        return {f"{prefix}_exact": "", f"{prefix}_decimal": ""}
    if isinstance(x, int) and not isinstance(x, bool):
        return {f"{prefix}_exact": str(x), f"{prefix}_decimal": str(x)}
    return {f"{prefix}_exact": exact_str(x), f"{prefix}_decimal": decimal_str(x)}


def row(record: str, label: str = "", lhs=None, rhs=None, passed=None, member="", partition="", step="") -> dict:
    out = {"record": record, "member": member, "partition": partition, "step": step, "label": label}
    out.update(_num("lhs", lhs))
    out.update(_num("rhs", rhs))
    out["pass"] = "" if passed is None else ("true" if passed else "false")
    return out


def render(kind: str, digest: str, rows: list[dict]) -> str:
    buf = io.StringIO()
    buf.write(f"# lpcompact {__version__} {kind} config_sha256={digest}\n")
    w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def params_digest(params: dict) -> str:
    canon = json.dumps(params, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def _line_row(record: str, line: AuditLine, member, partition, step) -> dict:
    return row(record, line.label, line.lhs, line.rhs, line.passed, member, partition, step)


def audit_rows(audit: FamilyAudit, labels: list[str]) -> list[dict]:
    rows = [
        row("summary", "p", audit.p),
        row("summary", "epsilon", audit.epsilon),
        row("summary", "delta", audit.delta),
        row("summary", "T", audit.constant_T),
        row("summary", "T*epsilon", audit.constant_T * audit.epsilon),
        row("summary", "pi0 blocks", len(audit.witness.partition)),
        row("summary", "all pass", passed=audit.all_pass),
    ]
    for i, good in enumerate(audit.witness.omega_f):
        rows.append(row("witness", "removed mass", good.complement().measure, audit.delta, member=i))
    for rep in audit.reports:
        part = labels[rep.partition_index]
        for s, line in enumerate(rep.lines, start=1):
            rows.append(_line_row("chain", line, rep.member, part, s))
        for s, line in enumerate(rep.side_lines, start=1):
            rows.append(_line_row("side", line, rep.member, part, s))
        rows.append(row("final", "I_pi <= T*epsilon", rep.I_pi, rep.bound, rep.final_bound_pass, rep.member, part))
    return rows


def failure_rows(cert: FrechetFailure) -> list[dict]:
    rows = [row("failure", "Frechet search", cert.epsilon, None, False), row("failure", "block budget", cert.block_budget)]
    for m in cert.failures:
        rows.append(row("certificate", "residual oscillation", m.residual_oscillation, cert.epsilon, False, m.member))
        rows.append(row("certificate", "mass needed", m.mass_needed, cert.epsilon, False, m.member))
        rows.append(row("certificate", "mass spent", m.mass_spent, cert.epsilon, None, m.member))
    return rows


def _cover_rows(name: str, c: CoveringResult, predicted: int | None = None) -> list[dict]:
    rows = [
        row("covering", f"{name} upper", c.upper),
        row("covering", f"{name} lower", c.lower),
    ]
    if predicted is not None:
        rows.append(row("covering", f"{name} exact vs predicted", c.exact, predicted, c.exact == predicted))
    else:
        rows.append(row("covering", f"{name} exact", c.exact))
    return rows


def example_rows(rep: ExampleReport) -> list[dict]:
    rows = [
        row("summary", "N", rep.N),
        row("summary", "L", rep.L),
        row("summary", "probe level", rep.k),
        row("summary", "epsilon", rep.epsilon),
        row("summary", "seed", rep.seed),
        row("summary", "probe sets", rep.probe_count),
        row("summary", "exhaustive probes", passed=rep.exhaustive_probes),
        row("summary", "integral-tight indicators", passed=rep.integral_tight_indicators),
        row("summary", "non-total-boundedness witnesses match", passed=rep.separation_matches),
    ]
    for n, v in rep.max_integral_norm.items():
        label = "max norm of integral over probes"
        rows.append(row("integral", label, v, 0 if n > rep.k else None, (v == 0) if n > rep.k else None, member=n))
    rows.append(row("integral", "norm equals |integral of r_n|", passed=rep.norm_identity_holds))
    rows.append(row("covering", "max covering of probe integral sets", rep.probe_max_covering))
    rows += _cover_rows("family L1", rep.family_covering, rep.predicted_family_covering)
    rows += _cover_rows("value set", rep.value_covering, rep.predicted_value_covering)
    for M, t in rep.ui.tail.items():
        rows.append(row("tail", f"M={M}", t, 0 if M >= 1 else None, (t == 0) if M >= 1 else None))
    for d, m in rep.ui.modulus.items():
        rows.append(row("modulus", f"delta={d}", m))
    for note in rep.notes:
        rows.append(row("note", note))
    return rows
