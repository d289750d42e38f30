"""Seeded empirical sampling of the exact joint-Z distribution.

The generator is pinned, not just the seed: draws come from Python's
Mersenne Twister via ``random.Random(seed).randrange(norm_sq)`` and are
mapped to outcomes through the cumulative integer weights |amp|**2 in
lexicographic outcome order.  The identifier below is recorded in every
summary so a reproduction knows exactly what to re-run.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .pauli import BasisKet
from .states import StateVector

GENERATOR_ID = "mt19937-randrange-cdf/1"


@dataclass(frozen=True)
class SampleSummary:
    """Counts of sampled outcomes plus the reproduction parameters."""

    seed: int
    runs: int
    generator: str
    counts: dict[BasisKet, int]
    max_abs_deviation: Fraction

    def total(self) -> int:
        return sum(self.counts.values())


def sample_outcomes(state: StateVector, runs: int, seed: int) -> SampleSummary:
    """Draw ``runs`` joint-Z outcomes from the exact distribution.

    Identical (state, runs, seed) triples give identical summaries.
    Counts cover the whole support, including outcomes never drawn.
    """
    if runs <= 0:
        raise ValueError("runs must be a positive integer")
    outcomes = state.support()
    boundaries = []
    acc = 0
    for ket in outcomes:
        acc += state.amplitude(ket).norm_sq()
        boundaries.append(acc)
    rng = random.Random(seed)
    counts = {ket: 0 for ket in outcomes}
    for _ in range(runs):
        draw = rng.randrange(state.norm_sq)
        counts[outcomes[bisect_right(boundaries, draw)]] += 1
    max_dev = max(
        abs(
            Fraction(counts[ket])
            - Fraction(runs * state.amplitude(ket).norm_sq(), state.norm_sq)
        )
        for ket in outcomes
    )
    return SampleSummary(seed, runs, GENERATOR_ID, counts, max_dev)
