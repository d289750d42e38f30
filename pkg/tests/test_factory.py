"""State construction and diagnostics.

The 56-component state is cross-checked against a second, independently
typed transcription, structured by component family rather than by the
source layout, so a slip in either copy shows up as a mismatch.
"""

from fractions import Fraction
from itertools import product

import pytest

from davn.factory import (
    PSI_1234_TERMS,
    build_psi4_qubit,
    build_psi_1234,
    check_global_stabilizer,
    commutation_phase_audit,
    embed_qubit_state,
    joint_z_probability,
    nonstabilizer_test,
    reduced_density,
    z_support,
)
from davn.gauss import GaussInt
from davn.pauli import PauliWord
from davn.states import StateVector, apply_to_state

# Second transcription: families keyed by (phase, members).
SECOND_TRANSCRIPTION = {
    0: ["0000", "2222"],
    2: ["0022", "2002", "2200", "0220", "0202", "2020"],
    1: [
        "0233", "3023", "3302", "2330", "0323", "3032",   # two 3s family, +i
        "0211", "1021", "1102", "2110", "0121", "1012",   # two 1s family, +i
        "1300", "0130", "0013", "3001", "1030", "0103",   # 1,3 with 0s, +i
        "3122", "2312", "2231", "1223", "3212", "2321",   # 1,3 with 2s, +i
    ],
    3: [
        "2033", "3203", "3320", "0332", "2303", "3230",   # two 3s family, -i
        "2011", "1201", "1120", "0112", "2101", "1210",   # two 1s family, -i
        "3100", "0310", "0031", "1003", "3010", "0301",   # 1,3 with 0s, -i
        "1322", "2132", "2213", "3221", "1232", "2123",   # 1,3 with 2s, -i
    ],
}


def test_component_table_matches_second_transcription():
    expected = {}
    for phase, kets in SECOND_TRANSCRIPTION.items():
        for digits in kets:
            ket = tuple(int(c) for c in digits)
            assert ket not in expected, f"duplicate {digits}"
            expected[ket] = phase
    assert expected == PSI_1234_TERMS


def test_psi1234_shape():
    psi = build_psi_1234()
    assert psi.norm_sq == 56
    assert len(psi.amplitudes) == 56
    assert all(sum(ket) % 4 == 0 for ket in psi.amplitudes)
    census = {}
    for amp in psi.amplitudes.values():
        census[amp.as_phase()] = census.get(amp.as_phase(), 0) + 1
    assert census == {0: 2, 1: 24, 2: 6, 3: 24}


def test_psi1234_amplitude_spot_checks():
    psi = build_psi_1234()
    assert psi.amplitude((0, 0, 0, 0)).as_phase() == 0
    assert psi.amplitude((0, 0, 2, 2)).as_phase() == 2
    assert psi.amplitude((0, 2, 3, 3)).as_phase() == 1
    assert psi.amplitude((2, 0, 3, 3)).as_phase() == 3
    assert psi.amplitude((1, 1, 1, 1)).is_zero()


def test_global_stabilizer_identity():
    psi = build_psi_1234()
    zword = PauliWord.from_exponents(4, z_exps={j: 1 for j in range(4)})
    assert apply_to_state(zword, psi).equals_exactly(psi)
    audit = check_global_stabilizer(psi)
    assert audit.stabilized and audit.digit_rule_holds


def test_digit_rule_on_single_kets():
    fixed = StateVector(4, {(0, 0, 1, 3): GaussInt(1, 0)})
    assert check_global_stabilizer(fixed).stabilized
    moved = StateVector(4, {(0, 0, 0, 1): GaussInt(1, 0)})
    audit = check_global_stabilizer(moved)
    assert not audit.stabilized
    assert audit.digit_rule_holds  # the rule itself still holds per ket


def test_reduced_density_site1_exact():
    psi = build_psi_1234()
    rho = reduced_density(psi, 0)
    assert rho.diagonal() == (
        Fraction(2, 7), Fraction(3, 14), Fraction(2, 7), Fraction(3, 14),
    )
    assert rho.is_hermitian()
    assert rho.trace() == 1
    # Off-diagonal entries vanish exactly.
    assert all(
        rho.numerators[r][c].is_zero()
        for r in range(4)
        for c in range(4)
        if r != c
    )


def test_reduced_density_brute_force_oracle():
    # Independent oracle: expand rho = sum over ket pairs explicitly on
    # the full 256-dimensional index set, then compare entry by entry.
    psi = build_psi_1234()
    site = 2
    dense = [[GaussInt(0, 0) for _ in range(4)] for _ in range(4)]
    for ket_a, amp_a in psi.amplitudes.items():
        for ket_b, amp_b in psi.amplitudes.items():
            rest_a = ket_a[:site] + ket_a[site + 1 :]
            rest_b = ket_b[:site] + ket_b[site + 1 :]
            if rest_a == rest_b:
                row, col = ket_a[site], ket_b[site]
                dense[row][col] = dense[row][col] + amp_a * amp_b.conj()
    rho = reduced_density(psi, site)
    assert rho.denominator == 56
    for r in range(4):
        for c in range(4):
            assert rho.numerators[r][c] == dense[r][c]


def test_maximally_entangled_pair_is_maximally_mixed():
    pair = StateVector(2, {(k, k): GaussInt(1, 0) for k in range(4)})
    rho = reduced_density(pair, 0)
    assert rho.is_maximally_mixed()
    assert nonstabilizer_test(pair).deviating_sites == ()


def test_nonstabilizer_verdicts():
    assert nonstabilizer_test(build_psi_1234()).is_nonstabilizer
    assert nonstabilizer_test(build_psi4_qubit()).is_nonstabilizer


def test_joint_probabilities():
    psi = build_psi_1234()
    assert joint_z_probability(psi, (0, 0, 0, 0)) == Fraction(1, 56)
    assert joint_z_probability(psi, (0, 0, 0, 1)) == 0
    assert joint_z_probability(psi, (1, 1, 1, 1)) == 0
    total = sum(
        (joint_z_probability(psi, ket) for ket in product(range(4), repeat=4)),
        Fraction(0),
    )
    assert total == 1


def test_z_support_sizes():
    assert len(z_support(build_psi_1234())) == 56
    single = StateVector(4, {(0, 0, 0, 0): GaussInt(1, 0)})
    assert z_support(single) == [(0, 0, 0, 0)]
    assert len(z_support(build_psi4_qubit())) == 7


def test_qubit_seed_state():
    q = build_psi4_qubit()
    assert q.norm_sq == 7
    assert q.amplitude((0, 0, 0, 0)).as_phase() == 0
    assert q.amplitude((0, 1, 1, 0)).as_phase() == 2
    assert q.amplitude((1, 1, 1, 1)).is_zero()
    # Oracle for the reduced density: count components by first digit.
    ups = sum(1 for ket in q.amplitudes if ket[0] == 0)
    downs = sum(1 for ket in q.amplitudes if ket[0] == 1)
    assert (ups, downs) == (4, 3)
    assert reduced_density(q, 0).diagonal() == (
        Fraction(4, 7), Fraction(3, 7),
    )


def test_embedding_preserves_structure():
    q = build_psi4_qubit()
    emb = embed_qubit_state(q, 1)
    assert emb.level == 4
    assert emb.norm_sq == 7
    assert emb.amplitude((0, 1, 1, 0)).as_phase() == 2
    assert emb.amplitude((0, 0, 0, 0)).as_phase() == 0
    with pytest.raises(ValueError):
        embed_qubit_state(q, 0)
    with pytest.raises(ValueError):
        embed_qubit_state(emb, 1)


def test_embedded_state_keeps_squared_z_word():
    emb = embed_qubit_state(build_psi4_qubit(), 1)
    zz = PauliWord.from_exponents(4, z_exps={j: 2 for j in range(4)})
    assert apply_to_state(zz, emb).equals_exactly(emb)
    # The plain Z word does not fix it: |0011> picks up phase i**2.
    audit = check_global_stabilizer(emb)
    assert not audit.stabilized


def test_commutation_phase_audit():
    assert commutation_phase_audit(2) == -1
    assert commutation_phase_audit(4) == 1
    assert commutation_phase_audit(6) == -1
    with pytest.raises(ValueError):
        commutation_phase_audit(3)
    with pytest.raises(ValueError):
        commutation_phase_audit(66)


def test_commutation_phase_audit_numeric_oracle():
    # Independent check with floating complex arithmetic (tests only):
    # the swap phase is omega**((d/2)**2).
    import cmath

    for d in range(2, 34, 2):
        omega = cmath.exp(2j * cmath.pi / d)
        value = omega ** ((d // 2) ** 2)
        expected = commutation_phase_audit(d)
        assert abs(value - expected) < 1e-9


def test_transcription_checksum_trips_on_corruption():
    from davn import factory

    broken = dict(PSI_1234_TERMS)
    broken[(0, 0, 2, 2)] = 0  # flip a sign: census breaks
    with pytest.raises(AssertionError):
        factory._check_transcription(broken)
    del broken[(0, 0, 2, 2)]
    with pytest.raises(AssertionError):
        factory._check_transcription(broken)
