from proxregio.simplicial.complex import (
    ComplexValidation,
    Simplex,
    SimplicialComplex,
    is_simplex,
    validate_complex,
)
from proxregio.simplicial.paths import complex_connected, is_cycle, path_connected, skeleton_components
from proxregio.simplicial.sew import Bridge, SewResult, is_rectangle, sew, side_edges

__all__ = [
    "Bridge",
    "ComplexValidation",
    "SewResult",
    "Simplex",
    "SimplicialComplex",
    "complex_connected",
    "is_cycle",
    "is_rectangle",
    "is_simplex",
    "path_connected",
    "sew",
    "side_edges",
    "skeleton_components",
    "validate_complex",
]
