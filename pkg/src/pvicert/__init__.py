"""Exact certification toolkit for algebraic Painleve VI solutions arising
from families of elliptic curves, via Gauss-Manin connections, Fuchsian
systems in Schlesinger normal form, and the middle convolution."""

__version__ = "0.1.0"

from .poly import Polynomial, REGISTRY, poly_gcd
from .ratfunc import RationalFunction, rf_int, rf_frac, rf_var, rf_sqrt
from .parse import parse_expression, to_string, ParseError
from .linalg import Matrix, kernel_basis, char_poly, verify_eigenvalue
