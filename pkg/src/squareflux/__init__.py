"""Exact flux of affine Dehn twist words on square-tiled surfaces."""
from .builders import genus2_block, genus5_example, genus5_word, torus
from .curves import Polyline, Traversal, crossing_number, polyline_from_traversal
from .errors import SquareFluxError
from .flux import FluxValue, flux, flux_hom, realizability_report, winding_oracle
from .homology import build_frame, class_of, invariant_sublattice, twist_action
from .surface import SquareComplex, faces, genus, parse_surface
from .twists import TwistWord, apply_twist, apply_word, pa_certificate, parse_word

__all__ = [
    "FluxValue", "Polyline", "SquareComplex", "SquareFluxError", "Traversal", "TwistWord",
    "apply_twist", "apply_word", "build_frame", "class_of", "crossing_number", "faces", "flux",
    "flux_hom", "genus", "genus2_block", "genus5_example", "invariant_sublattice", "pa_certificate",
    "genus5_word", "parse_surface", "parse_word", "polyline_from_traversal", "realizability_report",
    "torus", "twist_action", "winding_oracle",
]
