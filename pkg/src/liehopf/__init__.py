"""Exact integer engine for primitively generated Hopf algebras on free algebras."""

__version__ = "0.1.0"

from .catalog import preset, solve_gamma
from .freealg import Alphabet, Element, Generator, TensorSquareElement
from .hopf import HopfPresentation, is_primitive, reduced_coproduct, verify_hopf_axioms
from .koszul import SimplicialComplex, build_dga, coalgebra_from_ring, cohomology, cup_structure
from .linz import IntMatrix, hermite_normal_form, smith_normal_form, solve_integer
from .primitivize import ChangeOfBasis, ObstructionCertificate, check_certificate, lie_hopf_decision

__all__ = [
    "Alphabet",
    "ChangeOfBasis",
    "Element",
    "Generator",
    "HopfPresentation",
    "IntMatrix",
    "ObstructionCertificate",
    "SimplicialComplex",
    "TensorSquareElement",
    "build_dga",
    "check_certificate",
    "coalgebra_from_ring",
    "cohomology",
    "cup_structure",
    "hermite_normal_form",
    "is_primitive",
    "lie_hopf_decision",
    "preset",
    "reduced_coproduct",
    "smith_normal_form",
    "solve_gamma",
    "solve_integer",
    "verify_hopf_axioms",
]
