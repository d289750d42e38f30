"""Exact verification engine for a four-ququart (d = 4) deterministic
all-versus-nothing Bell-nonlocality argument.

Everything is integer arithmetic: Gaussian-integer amplitudes, phase
exponents mod 4, and rational probabilities.  See the README for the
module map and the CLI (``davn``) for the runnable verification suites.
"""

from .factory import (
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
from .gauss import GaussInt
from .lhv import (
    Constraint,
    classify_type,
    minimal_unsat_core,
    satisfiable,
    verify_davn,
    verify_paradox,
)
from .pauli import PauliWord, apply_word, mul_words, parse_word, word_str
from .postselect import (
    PairSelection,
    derive_constraints,
    postselect_pair,
    table_for_outcome,
)
from .states import StateVector, apply_to_state, eigenvalue_of, x_eigenstate

__version__ = "0.1.0"

__all__ = [
    "Constraint",
    "GaussInt",
    "PairSelection",
    "PauliWord",
    "StateVector",
    "__version__",
    "apply_to_state",
    "apply_word",
    "build_psi4_qubit",
    "build_psi_1234",
    "check_global_stabilizer",
    "classify_type",
    "commutation_phase_audit",
    "derive_constraints",
    "eigenvalue_of",
    "embed_qubit_state",
    "joint_z_probability",
    "minimal_unsat_core",
    "mul_words",
    "nonstabilizer_test",
    "parse_word",
    "postselect_pair",
    "reduced_density",
    "satisfiable",
    "table_for_outcome",
    "verify_davn",
    "verify_paradox",
    "word_str",
    "x_eigenstate",
    "z_support",
]
