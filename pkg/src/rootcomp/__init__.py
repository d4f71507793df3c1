"""Root components in cyclic convolution varieties of the affine Grassmannian of PGL_{n+1}."""

from .certifier import Certificate, certify_disjoint
from .grassmannian import ConvolutionTriple, GrPoint, relative_position, smith_invariants, verify_convolution_triple
from .lr import character_decompose, lr_coefficient, root_component_multiplicity
from .orbitdim import closed_form_orbit_dim, family_transversality, orbit_dimension
from .points import build_counterexample_xi, build_naive_xi, build_xi, build_xi_tilde
from .series import LaurentPoly, TruncPoly
from .typea import Coweight, PositiveRoot, check_root_component_conditions, parse_coweight, parse_root

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ConvolutionTriple",
    "Coweight",
    "GrPoint",
    "LaurentPoly",
    "PositiveRoot",
    "TruncPoly",
    "build_counterexample_xi",
    "build_naive_xi",
    "build_xi",
    "build_xi_tilde",
    "certify_disjoint",
    "character_decompose",
    "check_root_component_conditions",
    "closed_form_orbit_dim",
    "family_transversality",
    "lr_coefficient",
    "orbit_dimension",
    "parse_coweight",
    "parse_root",
    "relative_position",
    "root_component_multiplicity",
    "smith_invariants",
    "verify_convolution_triple",
]
