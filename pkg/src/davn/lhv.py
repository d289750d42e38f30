"""Local-hidden-variable refutation of the post-selection constraints.

A hidden-variable model assigns each site's X observable a fourth root of
unity i**v_j, and powers follow classically: X_j**u takes the value
i**(u*v_j).  A derived constraint  X_k**u X_l**v = i**t  therefore reads

    u*v_k + v*v_l = t  (mod 4),

a linear condition over Z4.  Refutation is by brute force over all
4**4 = 256 assignments; exhaustiveness is the proof, so the scan is the
permanent implementation, not a placeholder.  Minimal unsatisfiable cores
are found by increasing-size subset enumeration with lexicographic
tie-breaking, which makes every report byte-reproducible.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .factory import joint_z_probability, z_support
from .gauss import phase_str
from .pauli import BasisKet, PauliWord
from .pauli import word_str as pauli_word_str
from .postselect import ConstraintRow, Eigenword, TABLE_BLOCKS, table_for_outcome
from .states import StateVector

#: All hidden-variable assignments (v1, v2, v3, v4), lexicographic.
ASSIGNMENTS: tuple[tuple[int, int, int, int], ...] = tuple(
    product(range(4), repeat=4)
)

Assignment = tuple[int, int, int, int]


@dataclass(frozen=True)
class Constraint:
    """Product of X powers across sites equals a fourth root of unity."""

    exps: tuple[int, int, int, int]
    target: int

    def __post_init__(self) -> None:
        if not any(self.exps):
            raise ValueError("constraint must involve at least one site")

    def holds(self, values: Assignment) -> bool:
        return sum(e * v for e, v in zip(self.exps, values)) % 4 == self.target

    def word_str(self) -> str:
        word = PauliWord.from_exponents(
            4, x_exps={j: e for j, e in enumerate(self.exps) if e}
        )
        return pauli_word_str(word)

    def __str__(self) -> str:
        return f"{self.word_str()} = {phase_str(self.target)}"


def constraint_from_row(
    sites: tuple[int, ...], eigenword: Eigenword
) -> Constraint:
    """Lift a two-site eigenword onto the four-site constraint form."""
    (u, v), t = eigenword
    exps = [0, 0, 0, 0]
    exps[sites[0]] = u
    exps[sites[1]] = v
    return Constraint(tuple(exps), t)


def satisfiable(constraints: list[Constraint]) -> Assignment | None:
    """First assignment (lexicographic) meeting every constraint, or None.

    Scans all 256 assignments; an empty constraint list is vacuously
    satisfied by (0, 0, 0, 0).
    """
    for values in ASSIGNMENTS:
        if all(c.holds(values) for c in constraints):
            return values
    return None


def _mask(constraint: Constraint) -> int:
    """Bitmask over ASSIGNMENTS of where the constraint holds."""
    bits = 0
    for index, values in enumerate(ASSIGNMENTS):
        if constraint.holds(values):
            bits |= 1 << index
    return bits


def minimal_unsat_core(constraints: list[Constraint]) -> list[Constraint]:
    """Smallest-first, lexicographically-first unsatisfiable subset.

    Because subsets are enumerated by increasing size, the first
    unsatisfiable subset found has every proper subset satisfiable, so it
    is a minimal core.  Input must be unsatisfiable.
    """
    if satisfiable(constraints) is not None:
        raise ValueError("constraint set is satisfiable; no unsat core")
    masks = [_mask(c) for c in constraints]
    for size in range(1, len(constraints) + 1):
        for combo in combinations(range(len(constraints)), size):
            joint = (1 << len(ASSIGNMENTS)) - 1
            for index in combo:
                joint &= masks[index]
                if not joint:
                    break
            if not joint:
                return [constraints[index] for index in combo]
    raise AssertionError("unsatisfiable set must contain an unsat core")


def classify_type(outcome: BasisKet) -> str:
    """Family label of a supported outcome: I, II or III..VI with -A/-B.

    Families follow the reference-table block lists: I covers the two
    constant outcomes, II the placements of two 2s, and the A/B twins of
    III..VI split each remaining family by the phase orientation of the
    originating component.
    """
    key = tuple(outcome)
    for label, blocks in TABLE_BLOCKS.items():
        if key in blocks:
            return label
    raise ValueError(f"outcome {outcome} is not one of the 56 supported tuples")


def _dedup(constraints: list[Constraint]) -> list[Constraint]:
    seen = set()
    out = []
    for c in constraints:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


@dataclass(frozen=True)
class ParadoxReport:
    """Refutation record for one supported measurement outcome."""

    outcome: BasisKet
    type_label: str | None
    probability: Fraction
    rows: tuple[ConstraintRow, ...]
    constraints_basic: tuple[Constraint, ...]
    constraints_extended: tuple[Constraint, ...]
    witness: Assignment | None
    minimal_core: tuple[Constraint, ...] | None
    extended_only_unsatisfiable: bool

    @property
    def satisfiable(self) -> bool:
        return self.witness is not None

    @property
    def is_paradox(self) -> bool:
        return self.probability > 0 and not self.satisfiable


def verify_paradox(state: StateVector, outcome: BasisKet) -> ParadoxReport:
    """Build the constraint set of one outcome and refute it exhaustively.

    The set is every basic constraint plus every extended constraint of
    the outcome's six rows (extended ones are implied by basics but the
    hand arguments use them, so they are kept; duplicates are dropped
    with first occurrence preserved).
    """
    rows = table_for_outcome(state, outcome)
    basics = [
        constraint_from_row(row.residual.sites, row.basic)
        for row in rows
        if row.basic is not None
    ]
    extendeds = [
        constraint_from_row(row.residual.sites, row.extended)
        for row in rows
        if row.extended is not None
    ]
    merged = _dedup(basics + extendeds)
    witness = satisfiable(merged)
    core = None if witness is not None else tuple(minimal_unsat_core(merged))
    try:
        label = classify_type(outcome)
    except ValueError:
        label = None
    return ParadoxReport(
        outcome=tuple(outcome),
        type_label=label,
        probability=joint_z_probability(state, outcome),
        rows=rows,
        constraints_basic=tuple(basics),
        constraints_extended=tuple(extendeds),
        witness=witness,
        minimal_core=core,
        extended_only_unsatisfiable=satisfiable(_dedup(extendeds)) is None,
    )


_ROMAN_ORDER = ("I", "II", "III", "IV", "V", "VI")


@dataclass(frozen=True)
class DavnReport:
    """Aggregate over every supported outcome of a state.

    The verdict is DAVN exactly when the supported outcomes exhaust the
    distribution (probabilities sum to 1) and every one of them is
    LHV-unsatisfiable, i.e. any run of the experiment lands in a refuted
    outcome.
    """

    reports: tuple[ParadoxReport, ...]
    support_size: int
    probability_sum: Fraction
    verdict: str
    failing_outcomes: tuple[BasisKet, ...]

    @property
    def type_counts(self) -> dict[str, int]:
        """Outcome counts per family I..VI (subfamilies merged)."""
        counts: dict[str, int] = {}
        for report in self.reports:
            label = report.type_label or "unclassified"
            roman = label.split("-")[0]
            counts[roman] = counts.get(roman, 0) + 1
        order = [r for r in _ROMAN_ORDER if r in counts]
        order += [k for k in sorted(counts) if k not in _ROMAN_ORDER]
        return {k: counts[k] for k in order}


def _worker_count() -> int:
    raw = os.environ.get("DAVN_PARALLEL")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def verify_davn(state: StateVector) -> DavnReport:
    """Run verify_paradox over the whole support, in outcome order.

    Outcomes are independent, so the scan honours DAVN_PARALLEL as a
    worker cap; output order is deterministic either way.
    """
    outcomes = z_support(state)
    workers = _worker_count()
    if workers > 1 and len(outcomes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = tuple(
                pool.map(lambda o: verify_paradox(state, o), outcomes)
            )
    else:
        reports = tuple(verify_paradox(state, o) for o in outcomes)
    probability_sum = sum(
        (r.probability for r in reports), Fraction(0)
    )
    failing = tuple(r.outcome for r in reports if r.satisfiable)
    verdict = "DAVN" if probability_sum == 1 and not failing else "NOT-DAVN"
    return DavnReport(
        reports=reports,
        support_size=len(outcomes),
        probability_sum=probability_sum,
        verdict=verdict,
        failing_outcomes=failing,
    )
