"""
Structural tests on polynomials: rank-1 separation, root descriptors, exact nullspaces.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from sympy import Matrix, Rational

from polynomial_reducts.algebra.gcd import upoly_gcd
from polynomial_reducts.algebra.mpoly import MPoly, ev_get
from polynomial_reducts.algebra.rational import ZERO, Rat, render_rat
from polynomial_reducts.algebra.upoly import UPoly, rational_roots, squarefree_part
from polynomial_reducts.exceptions import PreconditionError, shape_error

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootDescriptor:
    """
    Exact description of the roots of a polynomial without factoring it.

    ``witness_poly`` is monic and squarefree; ``rational_roots`` lists all of its rational
    roots. The zero witness is a marker meaning "every value is a root".
    """

    witness_poly: UPoly
    rational_roots: tuple[Rat, ...]

    @classmethod
    def of(cls, poly: UPoly) -> RootDescriptor:
        """Descriptor of the roots of a polynomial (zero means all values)."""
        if poly.is_zero():
            return cls(poly, ())
        witness = squarefree_part(poly)
        roots = tuple(rational_roots(witness)) if not witness.is_constant() else ()
        return cls(witness, roots)

    @property
    def is_everything(self) -> bool:
        return self.witness_poly.is_zero()

    @property
    def is_empty(self) -> bool:
        return not self.is_everything and self.witness_poly.is_constant()

    @property
    def unique_rational(self) -> Rat | None:
        """The root when the witness is linear."""
        if self.witness_poly.degree == 1 and len(self.rational_roots) == 1:
            return self.rational_roots[0]
        return None

    def meet(self, other: RootDescriptor) -> RootDescriptor:
        """Descriptor of the common roots."""
        if self.is_everything:
            return other
        if other.is_everything:
            return self
        return RootDescriptor.of(upoly_gcd(self.witness_poly, other.witness_poly))

    def to_dict(self) -> dict[str, Any]:
        return {
            "witness_poly": "0" if self.is_everything else str(self.witness_poly),
            "all_values": self.is_everything,
            "rational_roots": [render_rat(r) for r in self.rational_roots],
        }


def _coefficient_grid(f: MPoly, x: str, y: str) -> dict[tuple[int, int], Rat]:
    grid: dict[tuple[int, int], Rat] = {}
    for ev, coeff in f.items():
        grid[(ev_get(ev, x), ev_get(ev, y))] = coeff
    return grid


def rank1_separate(f: MPoly, x: str = "x", y: str = "y") -> tuple[UPoly, UPoly] | None:
    """
    Split f = g(x)·h(y) with g monic, if the coefficient matrix of f has rank <= 1.

    Raises:
        PreconditionError: if f involves variables other than x and y
    """
    extra = f.support_vars() - {x, y}
    if extra:
        raise PreconditionError(
            f"unexpected variables {sorted(extra)}",
            requirement=f"support within {{{x}, {y}}}",
            operation="rank1_separate",
        )
    if f.is_zero():
        return UPoly.constant(1, x), UPoly((), y)
    grid = _coefficient_grid(f, x, y)
    (i0, j0), pivot = min(grid.items())
    column = [ZERO] * (f.degree_in(x) + 1)
    row = [ZERO] * (f.degree_in(y) + 1)
    for (i, j), coeff in grid.items():
        if j == j0:
            column[i] = coeff
        if i == i0:
            row[j] = coeff / pivot
    g, h = UPoly(tuple(column), x), UPoly(tuple(row), y)
    if (g.to_mpoly() * h.to_mpoly()) != f:
        logger.debug("coefficient matrix has rank >= 2")
        return None
    lead = g.lc
    return g.monic(), h.scale(lead)


def rational_nullspace(rows: list[list[Rat]], columns: int) -> list[list[Rat]]:
    """Basis of the exact rational nullspace of a matrix given by rows."""
    if not rows:
        return [[Fraction(int(i == k)) for i in range(columns)] for k in range(columns)]
    matrix = Matrix([[Rational(c.numerator, c.denominator) for c in row] for row in rows])
    basis = matrix.nullspace()
    return [[Fraction(int(e.p), int(e.q)) for e in vector] for vector in basis]


def linear_constraint_rows(
    operator_images: list[UPoly],
) -> list[list[Rat]]:
    """Rows of the matrix whose columns are the coefficient vectors of ``operator_images``."""
    height = max((p.degree + 1 for p in operator_images if not p.is_zero()), default=0)
    return [[p.coeff(i) for p in operator_images] for i in range(height)]


def bivariate_roles(f: MPoly, operation: str) -> tuple[str, str]:
    """
    The two variables of a genuinely bivariate polynomial, in name order.

    Raises:
        ShapeError: unless f has positive degree in exactly two variables
    """
    support = sorted(f.support_vars())
    if len(support) != 2:
        raise shape_error(
            "not genuinely bivariate",
            expected_shape="positive degree in exactly two variables",
            actual_variables=support,
            operation=operation,
        )
    return support[0], support[1]
