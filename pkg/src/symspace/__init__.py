"""Toolkit for noncompact Riemannian symmetric spaces.

Exact Lie-algebra computations (brackets, Killing forms, Cartan
decompositions, Lie triple systems, maximal flats, isotropy orbits) over the
rationals, a numerical Grassmannian search for totally geodesic tangent
spaces, and a machine-checkable certificate format with a CLI.
"""

from .core import (BilinearForm, CartanDecomposition, LieAlgebra, Subspace,
                   bracket, cartan_decompose, killing_form, orthocomplement,
                   subspace_intersection)
from .catalog import (SymmetricSpaceModel, build_space, build_space_spec,
                      catalog_invariants, catalog_list, parse_spec)

__all__ = [
    "BilinearForm", "CartanDecomposition", "LieAlgebra", "Subspace",
    "SymmetricSpaceModel",
    "bracket", "build_space", "build_space_spec", "cartan_decompose",
    "catalog_invariants", "catalog_list", "killing_form", "orthocomplement",
    "parse_spec", "subspace_intersection",
]
