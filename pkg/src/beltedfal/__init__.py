"""b-primality and belted-sum decompositions of fully augmented links."""

from .beltsum import belted_sum, canonical_decompose, is_b_prime, refine_to_whitehead, split
from .core import (
    InvalidCrushtacean,
    Nerve,
    PaintedCrushtacean,
    ParseError,
    canonical_code,
    crushtacean_of,
    isomorphism,
    nerve_of,
    parse,
    serialize,
    validate,
)
from .cuts import all_three_edge_cuts, nontrivial_cuts, separating_triangles
from .disks import disk_census, separating_pairs
from .fixtures import load as load_fixture
from .packing import pack
from .volume import V8, fal_volume, lobachevsky, verify_decomposition_volume

__version__ = "0.1.0"

__all__ = [
    "V8",
    "InvalidCrushtacean",
    "Nerve",
    "PaintedCrushtacean",
    "ParseError",
    "all_three_edge_cuts",
    "belted_sum",
    "canonical_code",
    "canonical_decompose",
    "crushtacean_of",
    "disk_census",
    "fal_volume",
    "is_b_prime",
    "isomorphism",
    "load_fixture",
    "lobachevsky",
    "nerve_of",
    "nontrivial_cuts",
    "pack",
    "parse",
    "refine_to_whitehead",
    "separating_pairs",
    "separating_triangles",
    "serialize",
    "split",
    "validate",
    "verify_decomposition_volume",
]
