"""
Polynomial gcd and exact division, delegated to sympy's QQ polynomial rings.

Only uni- and bivariate gcds are offered. Results are normalized: univariate gcds are
monic, bivariate gcds are primitive integer polynomials with a positive leading
coefficient in graded-lex order.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from fractions import Fraction
from math import gcd, lcm
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing

from polynomial_reducts.algebra.mpoly import ExpVec, MPoly
from polynomial_reducts.algebra.rational import Rat
from polynomial_reducts.algebra.upoly import UPoly
from polynomial_reducts.exceptions import PreconditionError, consistency_error

logger = logging.getLogger(__name__)

_RING_CACHE: dict[tuple[str, ...], PolyRing] = {}


def _ring(names: tuple[str, ...]) -> PolyRing:
    if names not in _RING_CACHE:
        _RING_CACHE[names] = PolyRing(",".join(names), QQ)
    return _RING_CACHE[names]


def _to_ring(poly: MPoly, ring: PolyRing, names: tuple[str, ...]) -> Any:
    index = {name: i for i, name in enumerate(names)}
    terms = {}
    for ev, coeff in poly.items():
        exps = [0] * len(names)
        for var, exp in ev:
            exps[index[var]] = exp
        terms[tuple(exps)] = QQ(coeff.numerator, coeff.denominator)
    return ring.from_dict(terms)


def _from_ring(element: Any, names: tuple[str, ...]) -> MPoly:
    terms: dict[ExpVec, Rat] = {}
    for exps, coeff in element.items():
        ev = tuple((names[i], e) for i, e in enumerate(exps) if e)
        terms[ev] = Fraction(int(coeff.numerator), int(coeff.denominator))
    return MPoly(terms)


def _shared_names(polys: Iterable[MPoly], limit: int | None, operation: str) -> tuple[str, ...]:
    names = tuple(sorted(set().union(*(p.support_vars() for p in polys))))
    if limit is not None and len(names) > limit:
        raise PreconditionError(
            f"{operation} supports at most {limit} variables, got {len(names)}",
            requirement=f"at most {limit} shared variables",
            operation=operation,
        )
    return names


def primitive_normalize(poly: MPoly) -> MPoly:
    """Scale to integer coefficients with content 1 and positive leading coefficient."""
    if poly.is_zero():
        return poly
    common = lcm(*(c.denominator for _, c in poly.items()))
    content = gcd(*(int(c * common) for _, c in poly.items()))
    factor = Fraction(common, content)
    if poly.leading_term()[1] < 0:
        factor = -factor
    return poly.scale(factor)


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """
    Monic gcd of two univariate polynomials.

    Raises:
        PreconditionError: if both inputs are zero
    """
    if a.is_zero() and b.is_zero():
        raise PreconditionError("gcd undefined", requirement="not both zero", operation="upoly_gcd")
    var = a.var if not a.is_constant() else b.var
    if a.is_zero():
        return b.with_var(var).monic()
    if b.is_zero():
        return a.with_var(var).monic()
    names = (var,)
    ring = _ring(names)
    g = _to_ring(a.with_var(var).to_mpoly(), ring, names).gcd(
        _to_ring(b.with_var(var).to_mpoly(), ring, names)
    )
    return UPoly.from_mpoly(_from_ring(g, names), var).monic()


def bivariate_gcd(a: MPoly, b: MPoly) -> MPoly:
    """
    Primitive gcd (positive leading coefficient) of polynomials in at most two variables.

    Raises:
        PreconditionError: if both inputs are zero or more than two variables occur
    """
    if a.is_zero() and b.is_zero():
        raise PreconditionError("gcd undefined", requirement="not both zero",
                                operation="bivariate_gcd")
    names = _shared_names((a, b), 2, "bivariate_gcd")
    if a.is_zero():
        return primitive_normalize(b)
    if b.is_zero():
        return primitive_normalize(a)
    if not names:
        return MPoly.constant(1)
    ring = _ring(names)
    g = _to_ring(a, ring, names).gcd(_to_ring(b, ring, names))
    result = primitive_normalize(_from_ring(g, names))
    logger.debug("gcd over %s has %d terms", names, len(result))
    return result


def exact_divide(a: MPoly, b: MPoly) -> MPoly:
    """
    a / b when b divides a exactly.

    Raises:
        PreconditionError: if b is zero
        ConsistencyError: if the division leaves a remainder
    """
    if b.is_zero():
        raise PreconditionError("division by zero polynomial", operation="exact_divide")
    if b.is_constant():
        return a.scale(1 / b.constant_value())
    names = _shared_names((a, b), None, "exact_divide")
    ring = _ring(names)
    try:
        quotient = _to_ring(a, ring, names).exquo(_to_ring(b, ring, names))
    except ExactQuotientFailed as e:
        raise consistency_error(
            "division is not exact",
            expected_state="zero remainder",
            actual_state="nonzero remainder",
        ) from e
    return _from_ring(quotient, names)


def reduce_fraction(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    """
    Lowest-terms form of num/den.

    Divides out the bivariate gcd, then scales both parts jointly to integer coefficients
    with no common integer content and a positive leading coefficient on the denominator,
    which makes the pair unique for the quotient it represents.

    Raises:
        PreconditionError: if den is zero
    """
    if den.is_zero():
        raise PreconditionError("zero denominator", requirement="den != 0",
                                operation="reduce_fraction")
    if num.is_zero():
        return MPoly.zero(), MPoly.constant(1)
    g = bivariate_gcd(num, den)
    top, bottom = exact_divide(num, g), exact_divide(den, g)
    coeffs = [c for _, c in top.items()] + [c for _, c in bottom.items()]
    common = lcm(*(c.denominator for c in coeffs))
    content = gcd(*(int(c * common) for c in coeffs))
    factor = Fraction(common, content)
    if bottom.leading_term()[1] < 0:
        factor = -factor
    return top.scale(factor), bottom.scale(factor)
