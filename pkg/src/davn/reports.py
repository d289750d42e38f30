"""Rendering of derived objects as text, markdown and JSON.

JSON output is schema-stable: every dict is built in a fixed key order,
rationals are rendered as strings like ``1/56``, and nothing
time-dependent is included, so byte-identical reruns are guaranteed for
the non-sampling commands.  The schemas are documented in the README.
"""

from __future__ import annotations

import json
from math import isqrt
from typing import Any

from .checks import Check
from .gauss import phase_str
from .lhv import Constraint, DavnReport, ParadoxReport
from .pauli import BasisKet
from .postselect import ConstraintRow, DiffReport, Eigenword
from .sampling import SampleSummary
from .states import StateVector


def to_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2) + "\n"


def outcome_digits(outcome: BasisKet) -> str:
    return "".join(map(str, outcome))


def outcome_eigenvalues(outcome: BasisKet) -> str:
    return ",".join(phase_str(k) for k in outcome)


def outcome_json(outcome: BasisKet) -> dict[str, Any]:
    return {
        "exponents": list(outcome),
        "eigenvalues": [phase_str(k) for k in outcome],
    }


def render_amplitude_term(ket: BasisKet, t: int, first: bool) -> str:
    sign = {0: "+", 1: "+i", 2: "-", 3: "-i"}[t]
    if first and t in (0, 1):
        sign = sign[1:]
    return f"{sign}|{outcome_digits(ket)}>"


def render_state(state: StateVector) -> str:
    """Ket-sum rendering with the exact normalisation as a suffix."""
    parts = []
    for index, ket in enumerate(state.support()):
        t = state.amplitudes[ket].as_phase()
        if t is None:
            raise ValueError("only unit-amplitude states are rendered")
        parts.append(render_amplitude_term(ket, t, index == 0))
    body = "(" + "".join(parts) + ")"
    n = state.norm_sq
    if n == 1:
        return body
    root = isqrt(n)
    return body + (f"/{root}" if root * root == n else f"/sqrt({n})")


def render_row_word(sites: tuple[int, ...], eigenword: Eigenword) -> str:
    (u, v), t = eigenword
    factors = []
    for site, exp in zip(sites, (u, v)):
        if exp:
            factors.append(f"X{site + 1}" + (f"^{exp}" if exp > 1 else ""))
    return "*".join(factors) + f" = {phase_str(t)}"


def row_word_json(
    sites: tuple[int, ...], eigenword: Eigenword | None
) -> dict[str, Any] | None:
    if eigenword is None:
        return None
    (u, v), t = eigenword
    exps = [0, 0, 0, 0]
    exps[sites[0]], exps[sites[1]] = u, v
    return {
        "word": render_row_word(sites, eigenword).split(" = ")[0],
        "exponents": exps,
        "value": phase_str(t),
        "value_exponent": t,
    }


def constraint_json(constraint: Constraint) -> dict[str, Any]:
    return {
        "word": constraint.word_str(),
        "exponents": list(constraint.exps),
        "value": phase_str(constraint.target),
        "value_exponent": constraint.target,
    }


# --- condition tables -----------------------------------------------------


def table_rows_json(rows: tuple[ConstraintRow, ...]) -> list[dict[str, Any]]:
    out = []
    for row in rows:
        sites = row.residual.sites
        out.append(
            {
                "pair": row.pair.describe(),
                "residual": render_state(row.residual.state),
                "basic": row_word_json(sites, row.basic),
                "extended": row_word_json(sites, row.extended),
                "eigenwords": [
                    row_word_json(sites, word) for word in row.eigenwords
                ],
            }
        )
    return out


def _row_cells(row: ConstraintRow) -> tuple[str, str, str, str]:
    sites = row.residual.sites
    return (
        row.pair.describe(),
        render_state(row.residual.state),
        render_row_word(sites, row.basic) if row.basic else "---",
        render_row_word(sites, row.extended) if row.extended else "---",
    )


def render_table_text(
    label: str, blocks: list[tuple[BasisKet, tuple[ConstraintRow, ...]]]
) -> str:
    lines = [f"condition table {label}"]
    for number, (outcome, rows) in enumerate(blocks, start=1):
        lines.append(
            f"\nblock {number}: outcome {outcome_digits(outcome)} "
            f"(Z = {outcome_eigenvalues(outcome)})"
        )
        cells = [_row_cells(row) for row in rows]
        widths = [max(len(c[i]) for c in cells) for i in range(4)]
        for c in cells:
            lines.append(
                "  "
                + "   ".join(c[i].ljust(widths[i]) for i in range(4)).rstrip()
            )
    return "\n".join(lines) + "\n"


def render_table_markdown(
    label: str, blocks: list[tuple[BasisKet, tuple[ConstraintRow, ...]]]
) -> str:
    def escape(cell: str) -> str:
        return cell.replace("|", "\\|")

    lines = [f"## Condition table {label}"]
    for number, (outcome, rows) in enumerate(blocks, start=1):
        lines.append(
            f"\n### Block {number}: outcome {outcome_digits(outcome)} "
            f"(Z = {outcome_eigenvalues(outcome)})"
        )
        lines.append("| pair | residual | basic | extended |")
        lines.append("|---|---|---|---|")
        for row in rows:
            lines.append(
                "| " + " | ".join(escape(c) for c in _row_cells(row)) + " |"
            )
    return "\n".join(lines) + "\n"


def render_table_json(
    label: str, blocks: list[tuple[BasisKet, tuple[ConstraintRow, ...]]]
) -> str:
    return to_json(
        {
            "schema": "davn.tables/1",
            "table": label,
            "blocks": [
                {
                    "block": number,
                    "outcome": outcome_json(outcome),
                    "rows": table_rows_json(rows),
                }
                for number, (outcome, rows) in enumerate(blocks, start=1)
            ],
        }
    )


# --- paradox and aggregate reports ----------------------------------------


def paradox_json(report: ParadoxReport, include_rows: bool = False) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "outcome": outcome_json(report.outcome),
        "type": report.type_label,
        "probability": str(report.probability),
        "constraints": {
            "basic": [constraint_json(c) for c in report.constraints_basic],
            "extended": [
                constraint_json(c) for c in report.constraints_extended
            ],
        },
        "lhv_satisfiable": report.satisfiable,
        "witness": list(report.witness) if report.witness else None,
        "minimal_core": (
            [constraint_json(c) for c in report.minimal_core]
            if report.minimal_core is not None
            else None
        ),
        "extended_only_unsatisfiable": report.extended_only_unsatisfiable,
    }
    if include_rows:
        payload["rows"] = table_rows_json(report.rows)
    return payload


def render_paradox_text(report: ParadoxReport) -> str:
    lines = [
        f"outcome {outcome_digits(report.outcome)} "
        f"(Z = {outcome_eigenvalues(report.outcome)})",
        f"type: {report.type_label or 'unclassified'}    "
        f"probability: {report.probability}",
        "",
        "pair conditions:",
    ]
    for cells in map(_row_cells, report.rows):
        lines.append(f"  {cells[0]}  ->  {cells[2]}   [extended: {cells[3]}]")
    lines.append("")
    if report.satisfiable:
        values = ",".join(map(str, report.witness))
        lines.append(f"LHV model EXISTS: X values i^({values})")
        lines.append("no paradox for this outcome")
    else:
        lines.append("LHV model: none (all 256 assignments violate a constraint)")
        lines.append("minimal unsatisfiable core:")
        for constraint in report.minimal_core:
            lines.append(f"  {constraint}")
        lines.append(
            "extended-only constraints already unsatisfiable: "
            + ("yes" if report.extended_only_unsatisfiable else "no")
        )
    return "\n".join(lines) + "\n"


def davn_json(report: DavnReport) -> str:
    return to_json(
        {
            "schema": "davn.report/1",
            "verdict": report.verdict,
            "support_size": report.support_size,
            "probability_sum": str(report.probability_sum),
            "type_counts": report.type_counts,
            "unsatisfiable_outcomes": sum(
                1 for r in report.reports if not r.satisfiable
            ),
            "failing_outcomes": [
                outcome_json(o) for o in report.failing_outcomes
            ],
            "outcomes": [paradox_json(r) for r in report.reports],
        }
    )


def render_davn_text(report: DavnReport) -> str:
    lines = [
        f"verdict: {report.verdict}",
        f"supported outcomes: {report.support_size}",
        f"probability covered: {report.probability_sum}",
        "refuted outcomes: "
        f"{sum(1 for r in report.reports if not r.satisfiable)}"
        f"/{report.support_size}",
        "type census: "
        + ", ".join(f"{k}: {v}" for k, v in report.type_counts.items()),
        "extended-only refutation everywhere: "
        + (
            "yes"
            if all(r.extended_only_unsatisfiable for r in report.reports)
            else "no"
        ),
    ]
    if report.failing_outcomes:
        lines.append(
            "outcomes with an LHV model: "
            + ", ".join(outcome_digits(o) for o in report.failing_outcomes)
        )
    lines.append("")
    lines.append("per-outcome summary (outcome, type, core size):")
    for r in report.reports:
        core = len(r.minimal_core) if r.minimal_core is not None else "-"
        lines.append(
            f"  {outcome_digits(r.outcome)}  {r.type_label or '?':6}  "
            f"{'unsat' if not r.satisfiable else 'SAT':5}  core={core}"
        )
    return "\n".join(lines) + "\n"


# --- state checks, sampling, fixtures diff --------------------------------


def checks_json(name: str, checks: list[Check]) -> str:
    return to_json(
        {
            "schema": "davn.verify-state/1",
            "state": name,
            "passed": all(c.passed for c in checks),
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in checks
            ],
        }
    )


def render_checks_text(name: str, checks: list[Check]) -> str:
    lines = [f"state: {name}"]
    for c in checks:
        mark = "PASS" if c.passed else "FAIL"
        lines.append(f"[{mark}] {c.name}")
        lines.append(f"       {c.detail}")
    lines.append(
        "result: " + ("PASS" if all(c.passed for c in checks) else "FAIL")
    )
    return "\n".join(lines) + "\n"


def sample_json(state_name: str, summary: SampleSummary) -> str:
    return to_json(
        {
            "schema": "davn.sample/1",
            "state": state_name,
            "seed": summary.seed,
            "runs": summary.runs,
            "generator": summary.generator,
            "max_abs_deviation": str(summary.max_abs_deviation),
            "counts": [
                {"outcome": outcome_json(ket), "count": count}
                for ket, count in sorted(summary.counts.items())
            ],
        }
    )


def render_sample_text(state_name: str, summary: SampleSummary) -> str:
    lines = [
        f"state: {state_name}   runs: {summary.runs}   seed: {summary.seed}",
        f"generator: {summary.generator}",
        f"max deviation from expectation: {summary.max_abs_deviation} "
        f"(= {float(summary.max_abs_deviation):.2f})",
        "counts:",
    ]
    for ket, count in sorted(summary.counts.items()):
        lines.append(f"  {outcome_digits(ket)}: {count}")
    return "\n".join(lines) + "\n"


def diff_json(report: DiffReport) -> str:
    return to_json(
        {
            "schema": "davn.fixtures-diff/1",
            "ok": report.ok,
            "total_rows": report.total_rows,
            "matched_rows": report.matched_rows,
            "allowlisted": [
                {
                    "table": verdict.row.table,
                    "row": verdict.row.index,
                    "kind": entry.kind,
                    "tag": entry.tag,
                    "note": entry.note,
                    "reasons": list(verdict.reasons),
                }
                for verdict, entry in report.allowlisted
            ],
            "failures": [
                {
                    "table": verdict.row.table,
                    "row": verdict.row.index,
                    "pair": verdict.row.pair.describe(),
                    "reasons": list(verdict.reasons),
                }
                for verdict in report.failures
            ],
            "unused_allowlist": [
                {"table": e.table, "row": e.index, "kind": e.kind}
                for e in report.unused_allowlist
            ],
        }
    )


def render_diff_text(report: DiffReport) -> str:
    lines = [
        f"rows checked: {report.total_rows}",
        f"fully matched: {report.matched_rows}",
        f"known discrepancies (allowlisted): {len(report.allowlisted)}",
    ]
    for verdict, entry in report.allowlisted:
        lines.append(
            f"  [{entry.tag}] table {verdict.row.table} row "
            f"{verdict.row.index} ({entry.kind}): {entry.note}"
        )
    if report.failures:
        lines.append(f"FAILURES: {len(report.failures)}")
        for verdict in report.failures:
            lines.append(
                f"  table {verdict.row.table} row {verdict.row.index} "
                f"pair {verdict.row.pair.describe()}: "
                + "; ".join(verdict.reasons)
            )
    if report.unused_allowlist:
        lines.append("allowlist entries that no longer fire:")
        for entry in report.unused_allowlist:
            lines.append(
                f"  table {entry.table} row {entry.index} kind {entry.kind}"
            )
    lines.append("result: " + ("PASS" if report.ok else "FAIL"))
    return "\n".join(lines) + "\n"
