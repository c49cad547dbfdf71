"""Exact computations with curved dg algebras and their twisted modules.

Scalars live in Q or F_p; every construction returns a machine-checkable
:class:`Certificate` for the identities it is supposed to satisfy.
"""

from .barcobar import (BarDifferential, Cobar, CobarMap, Element, GeneratorDerivation,
                       TruncatedTensorAlgebra, bar_differential, bar_points,
                       change_retraction_check, cobar, cobar_maps, inner_derivation,
                       representability_check, resolution_exactness, square_zero_certificate)
from .cdga import (Certificate, CurvedDGA, RetractionSplit, check_axioms, end_algebra,
                   endo_convolution, ground_algebra, involution_algebra, opposite,
                   small_example_algebra, split_by_retraction, tensor_cdga, truncated_polynomial)
from .graded import (GradedMap, GradedSpace, direct_sum, dual, hom_space, koszul_apply,
                     koszul_sign, suspend, tensor)
from .mc import (AlgebraMap, LeftModule, MCElement, enumerate_mc, is_mc, mc_pushforward,
                 mc_residual, twist_algebra, twist_left_module)
from .scalars import GF, QQ, Field, Matrix, in_span, kernel_basis, rank, rref, solve_linear
from .twisted import (ConfirmedUpTo, HomComplex, ModuleMap, PathObject, Refuted, RightModule,
                      TwistedModule, TwistedMorphism, adjunction_check, cohomology, cone,
                      functor_F_at, functor_G_at, hom_complex, hom_into_module, module_cone,
                      path_object, quasi_iso_check, weak_equiv_oracle)

__version__ = "0.1.0"

__all__ = [
    "AlgebraMap", "BarDifferential", "Certificate", "Cobar", "CobarMap", "ConfirmedUpTo",
    "CurvedDGA", "Element", "Field", "GF", "GeneratorDerivation", "GradedMap",
    "GradedSpace", "HomComplex", "LeftModule", "MCElement", "Matrix", "ModuleMap",
    "PathObject", "QQ", "Refuted", "RetractionSplit", "RightModule",
    "TruncatedTensorAlgebra", "TwistedModule", "TwistedMorphism", "adjunction_check",
    "bar_differential", "bar_points", "change_retraction_check", "check_axioms", "cobar",
    "cobar_maps", "cohomology", "cone", "direct_sum", "dual", "end_algebra",
    "endo_convolution", "enumerate_mc", "functor_F_at", "functor_G_at", "ground_algebra",
    "hom_complex", "hom_into_module", "hom_space", "in_span", "inner_derivation",
    "involution_algebra", "is_mc", "kernel_basis", "koszul_apply", "koszul_sign",
    "mc_pushforward", "mc_residual", "module_cone", "opposite", "path_object",
    "quasi_iso_check", "rank", "representability_check", "resolution_exactness", "rref",
    "small_example_algebra", "solve_linear", "split_by_retraction",
    "square_zero_certificate", "suspend", "tensor", "tensor_cdga", "truncated_polynomial",
    "twist_algebra", "twist_left_module", "weak_equiv_oracle",
]
