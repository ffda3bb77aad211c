"""Exact scalar and matrix arithmetic over Z, F_p, Z/p^N and truncated DVRs."""
from .backend import BACKEND, available_backends
from .finab import FinAbGroup, direct_sum
from .matrix import Matrix, block_diag, block_matrix, hstack, vstack
from .poly import BivarElem, bivar_reduce
from .rings import GroundRing, is_prime, vp
from .smith import (
    SmithForm,
    dvr_smith_form,
    hermite_columns,
    kernel_basis,
    rank,
    smith,
    smith_normal_form,
    solve,
)

__all__ = [
    "BACKEND",
    "BivarElem",
    "FinAbGroup",
    "GroundRing",
    "Matrix",
    "SmithForm",
    "available_backends",
    "bivar_reduce",
    "block_diag",
    "block_matrix",
    "direct_sum",
    "dvr_smith_form",
    "hermite_columns",
    "hstack",
    "is_prime",
    "kernel_basis",
    "rank",
    "smith",
    "smith_normal_form",
    "solve",
    "vp",
    "vstack",
]
