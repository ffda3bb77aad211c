"""Local totally ramified extensions: Eisenstein data, A (x)_R A, the ideal I,
chain-level verification and classification."""
from .classify import SolidReport, TripleReport, check_solid, classify, thm_equiv_rows, triple_fiber_check
from .eisenstein import (
    MIXED,
    TOTALLY_RAMIFIED,
    UNRAMIFIED,
    EisensteinDatum,
    LocalExtensionReport,
    LocalFactor,
    datum_from_poly,
    is_eisenstein,
    localize,
)
from .tensor import TensorSquare, Witness, build_tensor_square, omega_witness
from .verify import L2Result, MainLemmaReport, fiber_restatement, verify_L2, verify_mainlemma

__all__ = [
    "EisensteinDatum",
    "L2Result",
    "LocalExtensionReport",
    "LocalFactor",
    "MIXED",
    "MainLemmaReport",
    "SolidReport",
    "TOTALLY_RAMIFIED",
    "TensorSquare",
    "TripleReport",
    "UNRAMIFIED",
    "Witness",
    "build_tensor_square",
    "check_solid",
    "classify",
    "datum_from_poly",
    "fiber_restatement",
    "is_eisenstein",
    "localize",
    "omega_witness",
    "thm_equiv_rows",
    "triple_fiber_check",
    "verify_L2",
    "verify_mainlemma",
]
