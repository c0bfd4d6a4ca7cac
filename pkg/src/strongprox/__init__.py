"""Strong proximities on finite and pixel spaces.

The package models strong nearness relations, the topologies and hyperspace
topologies they induce, strongly proximal continuity of maps, and strong
connectedness, on two carriers: explicit finite topological spaces and
rasterised planar regions.
"""

from .connect import (Decomposition, PreconditionError, StrongChain, between_theorem_check,
                      closure_theorem_check, countable_criterion_check, delta_implies_connected,
                      find_decomposition, find_strong_chain, image_preservation_check, verify_decomposition)
from .grid import PixelGrid
from .hyper import HyperSpace, Miss, build_hyper, homeomorphism_theorem_check, hyper_map
from .maps import (Composition, Identity, Inversion, PixelTranslation, Rotation, TableMap, apply_point,
                   apply_region, is_homeomorphism_witness, open_map_check, spc_check)
from .proximity import (INTERIOR_OVERLAP, MIXED_OVERLAP, OVERLAP, PlainProximity, StrongProximity, Variant,
                        check_axioms, generated_opens, is_compatible)
from .spaces import CapacityError, FiniteSpace, all_topologies

__version__ = "0.1.0"

__all__ = [
    "FiniteSpace", "PixelGrid", "CapacityError", "all_topologies",
    "StrongProximity", "PlainProximity", "Variant", "INTERIOR_OVERLAP", "MIXED_OVERLAP", "OVERLAP",
    "check_axioms", "generated_opens", "is_compatible",
    "Decomposition", "StrongChain", "PreconditionError", "verify_decomposition", "find_decomposition",
    "delta_implies_connected", "closure_theorem_check", "between_theorem_check", "countable_criterion_check",
    "find_strong_chain", "image_preservation_check",
    "Identity", "Rotation", "Inversion", "Composition", "PixelTranslation", "TableMap", "apply_point",
    "apply_region", "spc_check", "open_map_check", "is_homeomorphism_witness",
    "HyperSpace", "Miss", "build_hyper", "hyper_map", "homeomorphism_theorem_check",
]
