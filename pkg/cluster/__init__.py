"""Exact-arithmetic workbench for cluster algebras of unipotent cells and open Richardson varieties."""

from .errors import ClusterError, ConsistencyError
from .laurent import LaurentPolynomial, Monomial
from .quiver import ExchangeQuiver
from .seed import Seed
from .morphism import ClusterMorphism
from .weyl import CartanDatum, WeightVector, load_cartan

__all__ = [
    "CartanDatum",
    "ClusterError",
    "ClusterMorphism",
    "ConsistencyError",
    "ExchangeQuiver",
    "LaurentPolynomial",
    "Monomial",
    "Seed",
    "WeightVector",
    "load_cartan",
]
