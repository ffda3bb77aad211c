"""Chain complexes, homology, resolutions and long exact sequences."""
from .algebra import BasedAlgebra, PresentedModule, expand_map, lambda_span
from .complexes import (
    ChainComplex,
    ChainMap,
    HomologyResult,
    fiber_projection,
    homology,
    identity_map,
    is_boundary,
    is_cycle,
    mapping_fiber,
    tensor_with_field,
)
from .exactness import LesReport, exact_at, les_exactness, sequence_exact_at
from .resolution import Resolution, free_resolution, lift_along, lift_chain_map, tensor_resolutions, tor

__all__ = [
    "BasedAlgebra",
    "ChainComplex",
    "ChainMap",
    "HomologyResult",
    "LesReport",
    "PresentedModule",
    "Resolution",
    "exact_at",
    "expand_map",
    "fiber_projection",
    "free_resolution",
    "homology",
    "identity_map",
    "is_boundary",
    "is_cycle",
    "lambda_span",
    "les_exactness",
    "lift_along",
    "lift_chain_map",
    "mapping_fiber",
    "sequence_exact_at",
    "tensor_resolutions",
    "tensor_with_field",
    "tor",
]
