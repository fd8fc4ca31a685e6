"""
Univariate polynomials over QQ.

A ``UPoly`` is a dense coefficient tuple (lowest degree first, no trailing zeros) together
with its designated variable name. It converts losslessly to and from a single-variable
``MPoly``; the algorithms here (composition solving, k-th roots, rational roots, the
antiderivative) are the univariate workhorses of the classifier and the detectors.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from sympy import divisors

from polynomial_reducts.algebra.mpoly import MPoly
from polynomial_reducts.algebra.rational import ONE, ZERO, Rat, RatLike, as_rat
from polynomial_reducts.constants import OUTER_SYMBOL
from polynomial_reducts.exceptions import PreconditionError, shape_error

logger = logging.getLogger(__name__)


def _trim(coeffs: Sequence[Rat]) -> tuple[Rat, ...]:
    end = len(coeffs)
    while end and not coeffs[end - 1]:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class UPoly:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of ``var**i``."""

    coeffs: tuple[Rat, ...]
    var: str = "x"

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim([as_rat(c) for c in self.coeffs]))

    # -------------------------------------------------------------------------
    # Constructors and conversion
    # -------------------------------------------------------------------------

    @classmethod
    def of(cls, coeffs: Sequence[RatLike], var: str = "x") -> UPoly:
        return cls(tuple(as_rat(c) for c in coeffs), var)

    @classmethod
    def constant(cls, value: RatLike, var: str = "x") -> UPoly:
        return cls((as_rat(value),), var)

    @classmethod
    def identity(cls, var: str = "x") -> UPoly:
        return cls((ZERO, ONE), var)

    @classmethod
    def from_mpoly(cls, poly: MPoly, var: str | None = None) -> UPoly:
        """Convert a polynomial in at most one variable."""
        support = poly.support_vars()
        if len(support) > 1 or (var is not None and support - {var}):
            raise shape_error(
                "polynomial is not univariate",
                expected_shape=f"univariate in {var or 'one variable'}",
                actual_variables=sorted(support),
                operation="UPoly.from_mpoly",
            )
        name = var or (next(iter(support)) if support else "x")
        coeffs = [ZERO] * (poly.degree_in(name) + 1)
        for ev, coeff in poly.items():
            coeffs[ev[0][1] if ev else 0] = coeff
        return cls(tuple(coeffs), name)

    def to_mpoly(self) -> MPoly:
        return MPoly({((self.var, i),) if i else (): c for i, c in enumerate(self.coeffs) if c})

    def with_var(self, var: str) -> UPoly:
        return UPoly(self.coeffs, var)

    # -------------------------------------------------------------------------
    # Inspection
    # -------------------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports 0 like ``MPoly.total_degree``."""
        return max(len(self.coeffs) - 1, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Rat:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, i: int) -> Rat:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def is_monic(self) -> bool:
        return self.lc == ONE

    def monic(self) -> UPoly:
        if self.is_zero():
            return self
        return self.scale(1 / self.lc)

    def __call__(self, value: RatLike) -> Rat:
        result = ZERO
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------

    def _check(self, other: UPoly) -> None:
        if self.var != other.var and not (self.is_constant() or other.is_constant()):
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other: UPoly | RatLike) -> UPoly:
        if not isinstance(other, UPoly):
            other = UPoly.constant(other, self.var)
        self._check(other)
        size = max(len(self.coeffs), len(other.coeffs))
        var = self.var if not self.is_constant() else other.var
        return UPoly(tuple(self.coeff(i) + other.coeff(i) for i in range(size)), var)

    __radd__ = __add__

    def __neg__(self) -> UPoly:
        return UPoly(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other: UPoly | RatLike) -> UPoly:
        if not isinstance(other, UPoly):
            other = UPoly.constant(other, self.var)
        return self + (-other)

    def __rsub__(self, other: RatLike) -> UPoly:
        return UPoly.constant(other, self.var) - self

    def scale(self, factor: RatLike) -> UPoly:
        factor = as_rat(factor)
        return UPoly(tuple(c * factor for c in self.coeffs), self.var)

    def __mul__(self, other: UPoly | RatLike) -> UPoly:
        if not isinstance(other, UPoly):
            return self.scale(other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UPoly((), self.var)
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        var = self.var if not self.is_constant() else other.var
        return UPoly(tuple(out), var)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> UPoly:
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = UPoly.constant(1, self.var)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def divmod(self, divisor: UPoly) -> tuple[UPoly, UPoly]:
        """Euclidean division over QQ."""
        if divisor.is_zero():
            raise PreconditionError("division by zero polynomial", operation="UPoly.divmod")
        remainder = list(self.coeffs)
        quotient = [ZERO] * max(len(remainder) - len(divisor.coeffs) + 1, 0)
        lead = divisor.lc
        for shift in range(len(quotient) - 1, -1, -1):
            factor = remainder[shift + divisor.degree] / lead
            quotient[shift] = factor
            if factor:
                for i, c in enumerate(divisor.coeffs):
                    remainder[shift + i] -= factor * c
        return UPoly(tuple(quotient), self.var), UPoly(tuple(remainder), self.var)

    def divides(self, other: UPoly) -> bool:
        """True when ``self`` divides ``other`` exactly (zero divides only zero)."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    # -------------------------------------------------------------------------
    # Composition and calculus
    # -------------------------------------------------------------------------

    def compose(self, inner: UPoly) -> UPoly:
        """self(inner(x)); the result lives in ``inner.var``."""
        result = UPoly((), inner.var)
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result.with_var(inner.var)

    def compose_mpoly(self, inner: MPoly) -> MPoly:
        """self(inner) for a multivariate inner polynomial (Horner)."""
        result = MPoly.zero()
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def derivative(self) -> UPoly:
        return UPoly(tuple(c * i for i, c in enumerate(self.coeffs))[1:], self.var)

    def antiderivative(self) -> UPoly:
        """Formal antiderivative with zero constant term."""
        return UPoly((ZERO,) + tuple(c / (i + 1) for i, c in enumerate(self.coeffs)), self.var)

    def shift(self, amount: RatLike) -> UPoly:
        """self(x + amount)."""
        return self.compose(UPoly((as_rat(amount), ONE), self.var))

    def __str__(self) -> str:
        from polynomial_reducts.parser import render

        return render(self.to_mpoly())


def antiderivative(p: UPoly) -> UPoly:
    """Formal antiderivative with zero constant term."""
    return p.antiderivative()


def inner_compose_solve(q: UPoly, w: UPoly) -> UPoly | None:
    """
    Find f with q = f(w), by greedy elimination of the top term.

    At each step deg(q) must be a multiple of deg(w); subtract (lc(q)/lc(w)^e)·w^e and
    continue until a constant remains. The returned f is in the variable ``t``.

    Raises:
        PreconditionError: if w is constant
    """
    if w.degree < 1:
        raise PreconditionError(
            "inner polynomial must be nonconstant",
            requirement="deg(w) >= 1",
            operation="inner_compose_solve",
        )
    step = w.degree
    rest = q.with_var(w.var)
    outer: dict[int, Rat] = {}
    while not rest.is_constant():
        if rest.degree % step:
            logger.debug("composition blocked at degree %d (inner degree %d)", rest.degree, step)
            return None
        exp = rest.degree // step
        coeff = rest.lc / w.lc ** exp
        outer[exp] = coeff
        rest = rest - (w ** exp).scale(coeff)
    outer[0] = rest.coeff(0)
    size = max(outer) + 1
    return UPoly(tuple(outer.get(i, ZERO) for i in range(size)), OUTER_SYMBOL)


def primitive_integer_coeffs(p: UPoly) -> list[int]:
    """Integer coefficients of the primitive part (positive leading coefficient)."""
    if p.is_zero():
        raise PreconditionError("zero polynomial has no primitive part")
    common = lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * common) for c in p.coeffs]
    content = gcd(*ints)
    ints = [c // content for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def rational_roots(p: UPoly) -> list[Rat]:
    """
    All rational roots of p, ascending, by divisor enumeration on the primitive part.

    Raises:
        PreconditionError: if p is the zero polynomial
    """
    if p.is_zero():
        raise PreconditionError(
            "rational roots of the zero polynomial are undefined",
            requirement="p != 0",
            operation="rational_roots",
        )
    ints = primitive_integer_coeffs(p)
    roots: set[Rat] = set()
    while ints and ints[0] == 0:
        roots.add(ZERO)
        ints = ints[1:]
    if len(ints) > 1:
        reduced = UPoly.of(ints, p.var)
        for num in divisors(abs(ints[0])):
            for den in divisors(abs(ints[-1])):
                for sign in (1, -1):
                    candidate = Fraction(sign * num, den)
                    if not reduced(candidate):
                        roots.add(candidate)
    return sorted(roots)


def squarefree_part(p: UPoly) -> UPoly:
    """Monic squarefree part p / gcd(p, p')."""
    from polynomial_reducts.algebra.gcd import upoly_gcd

    if p.is_zero():
        raise PreconditionError(
            "squarefree part of the zero polynomial is undefined",
            requirement="p != 0",
            operation="squarefree_part",
        )
    if p.is_constant():
        return UPoly.constant(1, p.var)
    g = upoly_gcd(p, p.derivative())
    return p.divmod(g)[0].monic()


def poly_kth_root(p: UPoly, k: int) -> tuple[UPoly, Rat] | None:
    """
    Find monic u0 and scalar c with p = c·u0**k, matching coefficients top-down.

    Raises:
        PreconditionError: if p is zero or k < 1
    """
    if p.is_zero():
        raise PreconditionError("k-th root of zero polynomial", operation="poly_kth_root")
    if k < 1:
        raise PreconditionError("root index must be positive", requirement="k >= 1",
                                operation="poly_kth_root")
    if p.degree % k:
        return None
    scale = p.lc
    target = p.scale(1 / scale)
    m = p.degree // k
    root = [ZERO] * m + [ONE]
    for i in range(1, m + 1):
        current = UPoly(tuple(root), p.var) ** k
        root[m - i] = (target.coeff(p.degree - i) - current.coeff(p.degree - i)) / k
    candidate = UPoly(tuple(root), p.var)
    if candidate ** k != target:
        return None
    return candidate, scale
