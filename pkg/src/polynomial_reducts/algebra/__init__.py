"""
Exact algebra: rationals, sparse polynomials and the structural algorithms built on them.
"""

from polynomial_reducts.algebra.gcd import (
    bivariate_gcd,
    exact_divide,
    primitive_normalize,
    reduce_fraction,
    upoly_gcd,
)
from polynomial_reducts.algebra.mpoly import (
    CONSTANT_MONOMIAL,
    ExpVec,
    MPoly,
    arith,
    ev_degree,
    ev_get,
    make_expvec,
)
from polynomial_reducts.algebra.rational import ONE, ZERO, Rat, RatLike, as_rat, parse_rat, render_rat
from polynomial_reducts.algebra.structure import (
    RootDescriptor,
    bivariate_roles,
    linear_constraint_rows,
    rank1_separate,
    rational_nullspace,
)
from polynomial_reducts.algebra.upoly import (
    UPoly,
    antiderivative,
    inner_compose_solve,
    poly_kth_root,
    rational_roots,
    squarefree_part,
)

__all__ = [
    "CONSTANT_MONOMIAL",
    "ExpVec",
    "MPoly",
    "ONE",
    "Rat",
    "RatLike",
    "RootDescriptor",
    "UPoly",
    "ZERO",
    "antiderivative",
    "arith",
    "as_rat",
    "bivariate_gcd",
    "bivariate_roles",
    "ev_degree",
    "ev_get",
    "exact_divide",
    "inner_compose_solve",
    "linear_constraint_rows",
    "make_expvec",
    "parse_rat",
    "poly_kth_root",
    "primitive_normalize",
    "rank1_separate",
    "rational_nullspace",
    "rational_roots",
    "reduce_fraction",
    "render_rat",
    "squarefree_part",
    "upoly_gcd",
]
