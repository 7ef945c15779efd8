"""Encodings of permutations by Laguerre histories and the resulting
gamma-expansions of q-Eulerian polynomials, checked by exhaustive enumeration."""

from .bijection import phi, phi_inverse, psi, psi_inverse
from .gamma import (
    GammaExpansion,
    QTPolynomial,
    gamma_dd,
    gamma_de,
    gamma_expand,
    qt_descent_polynomial,
    qt_eulerian,
)
from .laguerre import LaguerreHistory, TwoMotzkinPath, make_history, make_path
from .perm import Family, Permutation, make_permutation, parse_permutation

__version__ = "0.1.0"
