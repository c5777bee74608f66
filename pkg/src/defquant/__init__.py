"""Exact deformation quantization of polynomial Poisson structures.

Star products on S(V)[h]/h^(N+1), curved A-infinity structures on the
exterior algebra, the dual cobar differential, and rewriting
presentations of T(V)[h]/I with verification suites tying them together.
"""

from .ainfty import AInftyInstance, TaylorComponents, build_constant_instance, build_linear_instance, check_stasheff, check_unitality
from .algebra import ExtElement, NCPoly, SymPoly, abelianize, symmetrize
from .cobar import DualDifferential, classical_delta, cohomology_ranks, deformed_delta, quadratic_first_order_relation
from .duflo import duflo_apply, duflo_series
from .poisson import PoissonBivector, jacobi_defect, poisson_bracket
from .rewrite import RewriteRule, RewriteSystem, build_system
from .series import HSeries, hseries_mul
from .starprod import StarAlgebra, first_order_star, gutt_star, moyal_star
from .verify import verify_constant, verify_koszul, verify_linear, verify_quadratic

__version__ = "0.1.0"

__all__ = [
    "AInftyInstance", "TaylorComponents", "build_constant_instance", "build_linear_instance", "check_stasheff",
    "check_unitality", "ExtElement", "NCPoly", "SymPoly", "abelianize", "symmetrize", "DualDifferential",
    "classical_delta", "cohomology_ranks", "deformed_delta", "quadratic_first_order_relation", "duflo_apply",
    "duflo_series", "PoissonBivector", "jacobi_defect", "poisson_bracket", "RewriteRule", "RewriteSystem",
    "build_system", "HSeries", "hseries_mul", "StarAlgebra", "first_order_star", "gutt_star", "moyal_star",
    "verify_constant", "verify_koszul", "verify_linear", "verify_quadratic",
]
