"""Exact arithmetic for totally geodesic surfaces in Bianchi orbifolds."""

from bianchi.arith import (
    Factorization,
    RepresentabilityConflict,
    factorize,
    is_prime,
    is_rationally_representable,
    is_square_mod_squarefree,
    is_sum_of_two_squares,
    jacobi,
    jacobsthal,
    legendre_ternary_solvable,
    squarefree_part,
)

__version__ = "0.1.0"
