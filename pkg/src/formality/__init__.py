"""Hochschild-type cohomology, A∞ obstruction theory and vanishing-range checks
for finite-dimensional graded algebras and bimodules, over Q and F_p."""

__version__ = "0.1.0"

from .core import Field, Q, SparseMatrix
from .graded import DegreeWindow, GradedSpace
from .operad import (Cochain, EndomorphismOperad, FiniteOperad, LinearEndomorphismOperad,
                     OperadIdeal)
from .braces import brace, bracket, cup, gerstenhaber_square
from .complexes import (CohomologyClass, ComplexWindow, assemble_bimodule_complexes,
                        assemble_ideal_complex, assemble_operad_complex, connecting_delta,
                        hochschild_complex, les_exactness_audit)
from .ainfty import (AkAlgebra, AkBimodule, bimodule_universal_massey, universal_massey,
                     verify_ak_algebra, verify_ak_bimodule)
from .obstruction import (algebra_obstruction, bimodule_obstruction, extend_loop, extend_step,
                          pair_obstruction)
from .massey import build_massey_complex, bracket_with_class, massey_cohomology_dim
from .criteria import (RangeVerdict, check_existence, check_kadeishvili_algebra,
                       check_kadeishvili_bimodule, check_kadeishvili_simultaneous,
                       check_massey_bimodule, check_theoremB, check_theoremB_pair,
                       tail_certificate)

__all__ = [
    "Field", "Q", "SparseMatrix", "DegreeWindow", "GradedSpace", "Cochain",
    "EndomorphismOperad", "FiniteOperad", "LinearEndomorphismOperad", "OperadIdeal", "brace",
    "bracket", "cup", "gerstenhaber_square", "CohomologyClass", "ComplexWindow",
    "assemble_bimodule_complexes", "assemble_ideal_complex", "assemble_operad_complex",
    "connecting_delta", "hochschild_complex", "les_exactness_audit", "AkAlgebra", "AkBimodule",
    "bimodule_universal_massey", "universal_massey", "verify_ak_algebra", "verify_ak_bimodule",
    "algebra_obstruction", "bimodule_obstruction", "extend_loop", "extend_step",
    "pair_obstruction", "build_massey_complex", "bracket_with_class", "massey_cohomology_dim",
    "RangeVerdict", "check_existence", "check_kadeishvili_algebra",
    "check_kadeishvili_bimodule", "check_kadeishvili_simultaneous", "check_massey_bimodule",
    "check_theoremB", "check_theoremB_pair", "tail_certificate",
]
