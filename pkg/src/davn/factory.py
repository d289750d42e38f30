"""Construction and diagnostics of the states under study.

The central object is a four-ququart state with 56 basis components whose
digits sum to 0 mod 4, so the product of the four Z operators fixes it
(`check_global_stabilizer`), while its single-site reduced density
matrices are not maximally mixed (`nonstabilizer_test`) - the combination
that makes it interesting.  A four-qubit seed state and its digit-map
embedding into ququarts are provided for comparison.

Probabilities are exact `Fraction` values |amplitude|**2 / norm_sq.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .gauss import ZERO, GaussInt, parse_phase
from .pauli import BasisKet, PauliWord, apply_word
from .states import StateVector, apply_to_state

# The 56 components, written as <digits>:<amplitude>.  One row per
# component family: the two +1 kets, then six families each headed by a
# -1 ket (a placement of two 2s) followed by its eight +-i partners.
_PSI_1234_COMPONENTS = """
0000:+1 2222:+1
0022:-1 0233:+i 2033:-i 0211:+i 2011:-i 1300:+i 3100:-i 1322:-i 3122:+i
2002:-1 3023:+i 3203:-i 1021:+i 1201:-i 0130:+i 0310:-i 2132:-i 2312:+i
2200:-1 3302:+i 3320:-i 1102:+i 1120:-i 0013:+i 0031:-i 2213:-i 2231:+i
0220:-1 2330:+i 0332:-i 2110:+i 0112:-i 3001:+i 1003:-i 3221:-i 1223:+i
0202:-1 0323:+i 2303:-i 0121:+i 2101:-i 1030:+i 3010:-i 1232:-i 3212:+i
2020:-1 3032:+i 3230:-i 1012:+i 1210:-i 0103:+i 0301:-i 2123:-i 2321:+i
"""


def _parse_components(text: str) -> dict[BasisKet, int]:
    terms: dict[BasisKet, int] = {}
    for token in text.split():
        digits, value = token.split(":")
        ket = tuple(int(c) for c in digits)
        if ket in terms:
            raise ValueError(f"duplicate component {digits}")
        terms[ket] = parse_phase(value)
    return terms


PSI_1234_TERMS: dict[BasisKet, int] = _parse_components(_PSI_1234_COMPONENTS)


def _check_transcription(terms: dict[BasisKet, int]) -> None:
    """Checksum over the embedded component table.

    The table is data and data entry is the main risk, so the structural
    facts are re-verified at build time: 56 distinct kets, digit sums all
    0 mod 4, and the amplitude census 2/6/24/24 over 1/-1/i/-i.
    """
    if len(terms) != 56:
        raise AssertionError(f"expected 56 components, found {len(terms)}")
    if any(sum(ket) % 4 for ket in terms):
        raise AssertionError("a component has digit sum != 0 mod 4")
    census = {t: 0 for t in range(4)}
    for t in terms.values():
        census[t] += 1
    if census != {0: 2, 1: 24, 2: 6, 3: 24}:
        raise AssertionError(f"amplitude census off: {census}")


def build_psi_1234() -> StateVector:
    """The 56-component four-ququart state (norm_sq = 56)."""
    _check_transcription(PSI_1234_TERMS)
    return StateVector(
        4, {ket: GaussInt.from_phase(t) for ket, t in PSI_1234_TERMS.items()}
    )


def build_psi4_qubit() -> StateVector:
    """Four-qubit seed state: +|0000> minus the six weight-2 kets.

    norm_sq = 7; digits are 0 (up) and 1 (down).
    """
    amplitudes = {(0, 0, 0, 0): GaussInt.from_phase(0)}
    for i, j in combinations(range(4), 2):
        ket = tuple(1 if site in (i, j) else 0 for site in range(4))
        amplitudes[ket] = GaussInt.from_phase(2)
    return StateVector(4, amplitudes, level=2)


def embed_qubit_state(state: StateVector, target_digit: int) -> StateVector:
    """Relabel a 2-level state into 4 levels: 0 -> 0, 1 -> target_digit.

    Amplitudes are unchanged, so norm_sq is preserved.
    """
    if state.level != 2:
        raise ValueError("embedding expects a 2-level state")
    if not 1 <= target_digit <= 3:
        raise ValueError("target digit must be one of 1, 2, 3")
    return StateVector(
        state.n_sites,
        {
            tuple(target_digit if k else 0 for k in ket): amp
            for ket, amp in state.amplitudes.items()
        },
        level=4,
    )


@dataclass(frozen=True)
class DensityMatrix:
    """Exact single-site density matrix: numerators over a common denominator.

    Entry (r, c) is numerators[r][c] / denominator with a Gaussian-integer
    numerator, so Hermiticity and trace are checked by integer equality.
    """

    dim: int
    denominator: int
    numerators: tuple[tuple[GaussInt, ...], ...]

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(self.numerators[k][k].re, self.denominator)
            for k in range(self.dim)
        )

    def trace(self) -> Fraction:
        return sum(self.diagonal(), Fraction(0))

    def is_hermitian(self) -> bool:
        return all(
            self.numerators[r][c] == self.numerators[c][r].conj()
            for r in range(self.dim)
            for c in range(self.dim)
        )

    def is_maximally_mixed(self) -> bool:
        """Exactly equal to identity / dim."""
        for r in range(self.dim):
            for c in range(self.dim):
                num = self.numerators[r][c]
                if r == c:
                    if num.im != 0 or num.re * self.dim != self.denominator:
                        return False
                elif not num.is_zero():
                    return False
        return True


def reduced_density(state: StateVector, site: int) -> DensityMatrix:
    """Exact partial trace onto one site (0-based index)."""
    if not 0 <= site < state.n_sites:
        raise ValueError(f"site {site} out of range 0..{state.n_sites - 1}")
    d = state.level
    buckets: dict[BasisKet, dict[int, GaussInt]] = {}
    for ket, amp in state.amplitudes.items():
        rest = ket[:site] + ket[site + 1 :]
        buckets.setdefault(rest, {})[ket[site]] = amp
    nums = [[ZERO for _ in range(d)] for _ in range(d)]
    for row in buckets.values():
        for r, amp_r in row.items():
            for c, amp_c in row.items():
                nums[r][c] = nums[r][c] + amp_r * amp_c.conj()
    return DensityMatrix(d, state.norm_sq, tuple(tuple(r) for r in nums))


@dataclass(frozen=True)
class NonstabilizerVerdict:
    """Per-site deviation of the reduced density matrices from I/d.

    For a fully entangled state (assumed, not checked here) any deviation
    certifies that the state is not a stabilizer state.
    """

    densities: tuple[DensityMatrix, ...]
    deviating_sites: tuple[int, ...]

    @property
    def is_nonstabilizer(self) -> bool:
        return bool(self.deviating_sites)


def nonstabilizer_test(state: StateVector) -> NonstabilizerVerdict:
    densities = tuple(
        reduced_density(state, site) for site in range(state.n_sites)
    )
    deviating = tuple(
        site
        for site, rho in enumerate(densities)
        if not rho.is_maximally_mixed()
    )
    return NonstabilizerVerdict(densities, deviating)


@dataclass(frozen=True)
class KetAudit:
    ket: BasisKet
    digit_sum: int
    phase: int

    @property
    def fixed(self) -> bool:
        return self.phase == 0

    @property
    def digit_rule_holds(self) -> bool:
        return self.fixed == (self.digit_sum == 0)


@dataclass(frozen=True)
class StabilizerAudit:
    """Result of applying the all-sites Z word, per support ket.

    The word multiplies |k1..kn> by the phase of the digit sum, so it
    fixes the state exactly when every support ket has digit sum 0 mod d.
    `digit_rule_holds` records that equivalence both ways per ket.
    """

    stabilized: bool
    kets: tuple[KetAudit, ...]

    @property
    def digit_rule_holds(self) -> bool:
        return all(entry.digit_rule_holds for entry in self.kets)


def check_global_stabilizer(state: StateVector) -> StabilizerAudit:
    """Does Z1 Z2 ... Zn fix the state exactly?

    For 4-level states the word is applied through the Pauli machinery;
    for 2-level states Z is diag(1, -1) and the phase is 2*sum mod 4 in
    fourth-root units.
    """
    n = state.n_sites
    entries = []
    if state.level == 4:
        zword = PauliWord.from_exponents(n, z_exps={j: 1 for j in range(n)})
        image = apply_to_state(zword, state)
        stabilized = image.equals_exactly(state)
        for ket in state.support():
            phase, _ = apply_word(zword, ket)
            entries.append(KetAudit(ket, sum(ket) % 4, phase))
    else:
        stabilized = all(sum(ket) % 2 == 0 for ket in state.amplitudes)
        for ket in state.support():
            entries.append(KetAudit(ket, sum(ket) % 2, (2 * sum(ket)) % 4))
    return StabilizerAudit(stabilized, tuple(entries))


def joint_z_probability(state: StateVector, outcome: BasisKet) -> Fraction:
    """Probability of the joint Z outcome i**k_j on each site j.

    Measuring every Z projectively is measurement in the computational
    basis, so this is |amplitude|**2 / norm_sq, an exact rational.
    """
    return Fraction(state.amplitude(outcome).norm_sq(), state.norm_sq)


def z_support(state: StateVector) -> list[BasisKet]:
    """Outcome tuples with nonzero probability, in lexicographic order."""
    return state.support()


def commutation_phase_audit(d: int) -> int:
    """Sign relating X**(d/2) Z**(d/2) and Z**(d/2) X**(d/2) for even d.

    Swapping the halves multiplies by omega**((d/2)**2) with
    omega = exp(2*pi*i/d), which is +1 or -1 for even d; the value is -1
    (anticommuting, qubit-like) exactly when d/2 is odd.  Returned as
    +1 or -1.
    """
    if d % 2 or d < 2:
        raise ValueError("d must be a positive even integer")
    if d > 64:
        raise ValueError("audit supports d up to 64")
    exponent = (d // 2) ** 2 % d
    if exponent == 0:
        return 1
    if 2 * exponent == d:
        return -1
    raise AssertionError("(d/2)**2 mod d is always 0 or d/2 for even d")
