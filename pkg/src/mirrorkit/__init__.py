"""Exact and numerical checks for mirror symmetry of P^n via its (n+1)-fold cover."""

__version__ = "0.1.0"

from .coord_ring import RingMonomial, graded_dim, monomial_by_toric_degree, toric_degree
from .disc_numerics import BlaschkeProduct, BranchData, branch_degree, jet_jacobian_at_zero
from .exact_poly import LaurentPolynomial, multinomial
from .fs_combinatorics import a_side_dim, psi_decompose
from .superpotential import build_W, build_W_cl, build_W_hat, covering_pullback, critical_points

__all__ = [
    "BlaschkeProduct",
    "BranchData",
    "LaurentPolynomial",
    "RingMonomial",
    "a_side_dim",
    "branch_degree",
    "build_W",
    "build_W_cl",
    "build_W_hat",
    "covering_pullback",
    "critical_points",
    "graded_dim",
    "jet_jacobian_at_zero",
    "monomial_by_toric_degree",
    "multinomial",
    "psi_decompose",
    "toric_degree",
]
