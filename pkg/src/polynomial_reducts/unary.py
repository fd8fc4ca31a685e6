#!/usr/bin/env python3
"""
Unary reducts: iterates, the degree-2 reflection, and definability between single
unary polynomials.

For a unary P the definable unary functions are the constants together with

- constant P: the identity;
- degree 1: every iterate P^n, n in Z;
- degree 2: P^n and r o P^n for n >= 0, where r(x) = -b/a - x reflects across the axis;
- degree >= 3: P^n for n >= 0.

Interdefinability of two unary polynomials is the symmetric closure of that
membership test. The two-clause shortcut (both trivial, or inverse linear maps) is
evaluated separately so callers can surface pairs where it disagrees.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from sympy import multiplicity, primefactors

from polynomial_reducts.algebra.rational import ONE, ZERO, Rat
from polynomial_reducts.algebra.upoly import UPoly
from polynomial_reducts.constants import UnaryCase
from polynomial_reducts.exceptions import PreconditionError, consistency_error
from polynomial_reducts.types import (
    CorollaryClausesDict,
    DefinableFamilyDict,
    UnaryInterdefDict,
)

logger = logging.getLogger(__name__)


def iterate(p: UPoly, n: int) -> UPoly:
    """
    n-fold composition of p; n = 0 is the identity, negative n iterates the inverse.

    Raises:
        PreconditionError: if n < 0 and p is not of degree 1
    """
    if n < 0:
        if p.degree != 1:
            raise PreconditionError(
                "inverse not polynomial",
                requirement="deg(p) = 1 for negative iterates",
                operation="iterate",
            )
        a, b = p.coeff(1), p.coeff(0)
        inverse = UPoly((-b / a, ONE / a), p.var)
        return iterate(inverse, -n)

    result = UPoly.identity(p.var)
    for _ in range(n):
        result = p.compose(result)
    return result


def reflection(p: UPoly) -> UPoly:
    """
    r(x) = -b/a - x for p = a*x^2 + b*x + c; satisfies p(r(x)) = p(x).

    Raises:
        PreconditionError: if deg(p) != 2
    """
    if p.degree != 2:
        raise PreconditionError(
            f"reflection needs a quadratic, got degree {p.degree}",
            requirement="deg(p) = 2",
            operation="reflection",
        )
    r = UPoly((-p.coeff(1) / p.coeff(2), -ONE), p.var)
    if p.compose(r) != p:
        raise consistency_error(
            "reflection does not fix p",
            expected_state="p o r = p",
            actual_state=str(p.compose(r)),
        )
    return r


def unary_case(p: UPoly) -> UnaryCase:
    """Which clause of the definability lists applies to p."""
    if p.degree == 0:
        return UnaryCase.CONSTANT
    if p.degree == 1:
        return UnaryCase.DEGREE1
    if p.degree == 2:
        return UnaryCase.DEGREE2
    return UnaryCase.DEGREE_GE3


@dataclass(frozen=True)
class DefinableFamily:
    """Definable unary functions of p, listed up to a degree bound."""
    polynomial: UPoly
    case: UnaryCase
    degree_bound: int
    members: tuple[UPoly, ...]
    includes_all_constants: bool = True
    reflection: UPoly | None = None

    def to_dict(self) -> DefinableFamilyDict:
        return {
            "polynomial": str(self.polynomial),
            "case": self.case.value,
            "degree_bound": self.degree_bound,
            "members": [str(m) for m in self.members],
            "includes_all_constants": self.includes_all_constants,
            "reflection": str(self.reflection) if self.reflection is not None else None,
        }


def _append_unique(members: list[UPoly], candidate: UPoly) -> None:
    if candidate not in members:
        members.append(candidate)


def definable_functions(p: UPoly, degree_bound: int) -> DefinableFamily:
    """
    Enumerate the definable non-constant unary functions of p with degree <= bound.

    For degree-1 p every iterate has degree 1, so the bound caps the iterate index
    instead: P^n for -bound <= n <= bound, repeats dropped.
    """
    if degree_bound < 1:
        raise PreconditionError("degree bound must be positive", requirement="bound >= 1",
                                operation="definable_functions")
    case = unary_case(p)
    members: list[UPoly] = []
    r: UPoly | None = None

    if case is UnaryCase.CONSTANT:
        members.append(UPoly.identity(p.var))
    elif case is UnaryCase.DEGREE1:
        for n in range(-degree_bound, degree_bound + 1):
            _append_unique(members, iterate(p, n))
    else:
        if case is UnaryCase.DEGREE2:
            r = reflection(p)
        power = UPoly.identity(p.var)
        while power.degree <= degree_bound:
            _append_unique(members, power)
            if r is not None:
                _append_unique(members, r.compose(power))
            power = p.compose(power)

    logger.debug("definable family of %s: %d members", p, len(members))
    return DefinableFamily(p, case, degree_bound, tuple(members), True, r)


def _valuation(value: Rat, prime: int) -> int:
    num, den = abs(value.numerator), value.denominator
    return int(multiplicity(prime, num)) - int(multiplicity(prime, den))


def _degree1_exponent(a: Rat, target: Rat) -> int | None:
    """n with a**n == target for rational a outside {0, 1, -1}."""
    prime = primefactors(a.numerator * a.denominator)[0]
    step = _valuation(a, prime)
    if not target:
        return None
    wanted = _valuation(target, prime)
    if wanted % step:
        return None
    n = wanted // step
    return n if a ** n == target else None


def definability_witness(q: UPoly, p: UPoly) -> str | None:
    """
    How q is definable from p ("constant", "P^n" or "r o P^n"), or None.

    The search needs no bound: iterate degrees grow geometrically for deg(p) >= 2, and
    for degree 1 the exponent is read off from prime valuations of the leading
    coefficient.
    """
    q = q.with_var(p.var)
    if q.is_constant():
        return "constant"

    if p.degree == 0:
        return "P^0" if q == UPoly.identity(p.var) else None

    if p.degree == 1:
        if q.degree != 1:
            return None
        a, b = p.coeff(1), p.coeff(0)
        if a == ONE:
            if b == ZERO:
                return "P^0" if q == p else None
            if q.coeff(1) != ONE:
                return None
            n_frac = q.coeff(0) / b
            if n_frac.denominator != 1:
                return None
            return f"P^{n_frac.numerator}"
        if a == -ONE:
            for n in (0, 1):
                if iterate(p, n) == q:
                    return f"P^{n}"
            return None
        n = _degree1_exponent(a, q.coeff(1))
        if n is None or iterate(p, n) != q:
            return None
        return f"P^{n}"

    d = p.degree
    n, size = 0, 1
    while size < q.degree:
        size *= d
        n += 1
    if size != q.degree:
        return None
    power = iterate(p, n)
    if power == q:
        return f"P^{n}"
    if d == 2 and reflection(p).compose(power) == q:
        return f"r o P^{n}"
    return None


def is_definable_from(q: UPoly, p: UPoly) -> bool:
    """True iff q is a constant or one of p's listed definable functions."""
    return definability_witness(q, p) is not None


@dataclass(frozen=True)
class CorollaryClauses:
    """The two-clause shortcut: both trivial, or inverse linear maps"""
    both_trivial: bool
    inverse_linear: bool

    @property
    def holds(self) -> bool:
        return self.both_trivial or self.inverse_linear

    def to_dict(self) -> CorollaryClausesDict:
        return {"both_trivial": self.both_trivial, "inverse_linear": self.inverse_linear}


def _is_trivial_map(p: UPoly) -> bool:
    return p.is_constant() or p == UPoly.identity(p.var)


def corollary_clauses(p: UPoly, q: UPoly) -> CorollaryClauses:
    """Evaluate the two shortcut clauses for the pair (p, q)."""
    q = q.with_var(p.var)
    both_trivial = _is_trivial_map(p) and _is_trivial_map(q)
    inverse_linear = (
        p.degree == 1
        and q.degree == 1
        and p.compose(q) == UPoly.identity(p.var)
    )
    return CorollaryClauses(both_trivial, inverse_linear)


@dataclass(frozen=True)
class UnaryInterdefinability:
    """Mutual definability of two unary polynomials with its witnesses."""
    p: UPoly
    q: UPoly
    forward: str | None  # q from p
    backward: str | None  # p from q
    clauses: CorollaryClauses

    @property
    def interdefinable(self) -> bool:
        return self.forward is not None and self.backward is not None

    @property
    def disagrees_with_clauses(self) -> bool:
        return self.interdefinable != self.clauses.holds

    @property
    def explanation(self) -> str:
        if self.forward is not None and self.backward is not None:
            backward = self.backward.replace("P", "Q")
            return f"Q is definable from P as {self.forward} and P from Q as {backward}"
        if self.forward is None:
            return "Q is not among the definable functions of P"
        return "P is not among the definable functions of Q"

    def diagnostics(self) -> list[str]:
        """Machine-readable note when the two-clause shortcut gives another verdict."""
        if not self.disagrees_with_clauses:
            return []
        clause_verdict = "interdefinable" if self.clauses.holds else "not interdefinable"
        full_verdict = "interdefinable" if self.interdefinable else "not interdefinable"
        return [
            f"corollary_discrepancy: the two-clause corollary says {clause_verdict}, "
            f"the definable-function lists say {full_verdict} ({self.p} vs {self.q})"
        ]

    def to_dict(self) -> UnaryInterdefDict:
        return {
            "interdefinable": self.interdefinable,
            "forward": self.forward,
            "backward": self.backward,
            "explanation": self.explanation,
            "corollary_clauses": self.clauses.to_dict(),
        }


def interdefinable_unary(p: UPoly, q: UPoly) -> UnaryInterdefinability:
    """Mutual definability of p and q, computed from the definable-function lists."""
    q = q.with_var(p.var)
    result = UnaryInterdefinability(
        p=p,
        q=q,
        forward=definability_witness(q, p),
        backward=definability_witness(p, q),
        clauses=corollary_clauses(p, q),
    )
    if result.disagrees_with_clauses:
        logger.info("clause shortcut disagrees for %s vs %s", p, q)
    return result
