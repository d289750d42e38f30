"""Sparse multi-qudit state vectors with exact Gaussian-integer amplitudes.

A state is an unnormalised map from basis kets (tuples over Z_d) to
nonzero Gaussian integers, plus the cached squared norm.  Nothing is ever
divided: the physical state is the vector divided by sqrt(norm_sq), and
every consumer works with the integer data directly.

States are immutable after construction and all operations here are pure,
so values can be shared freely between threads.
"""

from __future__ import annotations

from .gauss import ZERO, GaussInt
from .pauli import BasisKet, PauliWord, apply_word


class StateVector:
    """Unnormalised state: ket -> amplitude, with squared norm cached."""

    __slots__ = ("level", "n_sites", "amplitudes", "norm_sq")

    def __init__(
        self,
        n_sites: int,
        amplitudes: dict[BasisKet, GaussInt],
        level: int = 4,
    ) -> None:
        cleaned: dict[BasisKet, GaussInt] = {}
        norm_sq = 0
        for ket, amp in amplitudes.items():
            if amp.is_zero():
                continue
            if len(ket) != n_sites:
                raise ValueError(f"ket {ket} does not have {n_sites} digits")
            if any(not 0 <= k < level for k in ket):
                raise ValueError(f"ket {ket} has digits outside 0..{level - 1}")
            cleaned[ket] = amp
            norm_sq += amp.norm_sq()
        self.level = level
        self.n_sites = n_sites
        self.amplitudes = cleaned
        self.norm_sq = norm_sq

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.equals_exactly(other)

    def __repr__(self) -> str:
        return (
            f"StateVector(n_sites={self.n_sites}, level={self.level}, "
            f"terms={len(self.amplitudes)}, norm_sq={self.norm_sq})"
        )

    def amplitude(self, ket: BasisKet) -> GaussInt:
        return self.amplitudes.get(tuple(ket), ZERO)

    def is_zero(self) -> bool:
        return not self.amplitudes

    def support(self) -> list[BasisKet]:
        """Kets with nonzero amplitude, in lexicographic order."""
        return sorted(self.amplitudes)

    def scaled_by_phase(self, t: int) -> StateVector:
        return StateVector(
            self.n_sites,
            {ket: amp.times_phase(t) for ket, amp in self.amplitudes.items()},
            level=self.level,
        )

    def equals_exactly(self, other: StateVector) -> bool:
        return (
            self.level == other.level
            and self.n_sites == other.n_sites
            and self.amplitudes == other.amplitudes
        )

    def phase_relative_to(self, other: StateVector) -> int | None:
        """t with self == i**t * other amplitude-by-amplitude, else None."""
        if self.level != other.level or self.n_sites != other.n_sites:
            return None
        for t in range(4):
            if self.equals_exactly(other.scaled_by_phase(t)):
                return t
        return None

    def dump(self) -> str:
        """Line-oriented text form: header then ``<digits> <phase t>``.

        Only states whose amplitudes are all fourth roots of unity can be
        dumped; that covers every state constructed in this package.
        """
        lines = [f"norm_sq={self.norm_sq}"]
        for ket in self.support():
            t = self.amplitudes[ket].as_phase()
            if t is None:
                raise ValueError(
                    f"amplitude of {ket} is not a unit phase; cannot dump"
                )
            lines.append("".join(map(str, ket)) + f" {t}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str, level: int = 4) -> StateVector:
        """Inverse of :meth:`dump`; the header norm is re-verified.

        The format stores digits and phases only, so the caller supplies
        the level (pass level=2 to reload a qubit-state dump).
        """
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines or not lines[0].startswith("norm_sq="):
            raise ValueError("state dump must start with a norm_sq= header")
        declared = int(lines[0].split("=", 1)[1])
        amplitudes: dict[BasisKet, GaussInt] = {}
        n_sites = None
        for line in lines[1:]:
            digits, t = line.split()
            ket = tuple(int(c) for c in digits)
            if n_sites is None:
                n_sites = len(ket)
            amplitudes[ket] = GaussInt.from_phase(int(t))
        state = cls(n_sites or 0, amplitudes, level=level)
        if state.norm_sq != declared:
            raise ValueError(
                f"declared norm_sq={declared} but amplitudes give {state.norm_sq}"
            )
        return state


def apply_to_state(word: PauliWord, state: StateVector) -> StateVector:
    """Linear extension of the word action; preserves norm_sq exactly."""
    if state.level != 4:
        raise ValueError("Pauli words act on 4-level states only")
    out: dict[BasisKet, GaussInt] = {}
    for ket, amp in state.amplitudes.items():
        t, image = apply_word(word, ket)
        out[image] = out.get(image, ZERO) + amp.times_phase(t)
    return StateVector(state.n_sites, out, level=state.level)


def eigenvalue_of(word: PauliWord, state: StateVector) -> int | None:
    """Phase exponent c with word|s> = i**c |s>, or None.

    The check is amplitude-by-amplitude equality after applying the word,
    so a non-None result is an exact eigen-relation with a fourth-root
    eigenvalue.  Raises on a zero state, where the relation is vacuous.
    """
    if state.is_zero():
        raise ValueError("zero state has no eigenvalues")
    image = apply_to_state(word, state)
    return image.phase_relative_to(state)


def x_eigenstate(m: int) -> StateVector:
    """Single-site eigenstate of X with eigenvalue i**m (unnormalised).

    The amplitude at |k> is i**(-m*k): shifting k -> k+1 then multiplies
    every amplitude by i**m, which is exactly the eigen-relation
    eigenvalue_of(X, x_eigenstate(m)) == m.
    """
    return StateVector(
        1, {(k,): GaussInt.from_phase(-m * k) for k in range(4)}
    )
