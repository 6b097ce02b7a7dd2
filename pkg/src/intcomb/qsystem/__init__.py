"""Q-systems, M-system difference operators and their Macdonald deformation."""
from .classical import DegenerateOrbit, a1_conserved_quantity, a1_orbit, classical_qsystem_check, kr_character
from .macdonald import (
    EigencheckFailed,
    dim_exchange_check,
    exchange_kernel,
    macdonald_eigencheck,
    macdonald_polynomial,
    psi_series,
    t_limit_check,
)
from .msystem import (
    GradedCharSpec,
    GradingFailure,
    graded_character,
    graded_character_report,
    grading_exponent,
    msystem_relations_check,
    probe_family,
    qdet_asm_terms,
    qdet_product_terms,
    qdet_report,
    quantum_determinant,
)
from .operators import MOperator, OperatorIdentityViolated, OpCache, apply_word, m_apply, mac_apply, ring_gens

__all__ = [
    "DegenerateOrbit",
    "EigencheckFailed",
    "GradedCharSpec",
    "GradingFailure",
    "MOperator",
    "OpCache",
    "OperatorIdentityViolated",
    "a1_conserved_quantity",
    "a1_orbit",
    "apply_word",
    "classical_qsystem_check",
    "dim_exchange_check",
    "exchange_kernel",
    "graded_character",
    "graded_character_report",
    "grading_exponent",
    "kr_character",
    "m_apply",
    "mac_apply",
    "macdonald_eigencheck",
    "macdonald_polynomial",
    "msystem_relations_check",
    "probe_family",
    "psi_series",
    "qdet_asm_terms",
    "qdet_product_terms",
    "qdet_report",
    "quantum_determinant",
    "ring_gens",
    "t_limit_check",
]
