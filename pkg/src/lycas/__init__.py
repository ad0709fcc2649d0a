"""Exact computer algebra for Lie-Yamaguti algebras, reductive triples and their representations."""

from .exactlin import Basis, Subspace, q, qarray
from .liealg import (
    LieAlgebra,
    LocalRegularSPair,
    ReductiveTriple,
    associated_triple,
    canonical_hom,
    enveloping,
    induced_ly,
    is_L_semisimple,
    is_semisimple,
    killing_form,
)
from .lyalg import InfSManifold, LieYamagutiAlgebra, LYHom, check_hom, check_ism, check_ly_axioms

__version__ = "0.1.0"
