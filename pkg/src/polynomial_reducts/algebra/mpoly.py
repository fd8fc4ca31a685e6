"""
Exact sparse multivariate polynomials over QQ.

An ``MPoly`` is an immutable map from exponent vectors to nonzero rationals. Exponent
vectors (``ExpVec``) are tuples of ``(variable, exponent)`` pairs sorted by variable name,
with no zero exponents; the empty tuple is the constant monomial.

Term order is graded lexicographic with variables compared by name, so ``x*y`` precedes
``x`` precedes ``y`` precedes the constant.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Mapping
from types import MappingProxyType
from typing import Union

from polynomial_reducts.algebra.rational import ONE, ZERO, Rat, RatLike, as_rat

logger = logging.getLogger(__name__)

ExpVec = tuple[tuple[str, int], ...]

CONSTANT_MONOMIAL: ExpVec = ()


def make_expvec(exponents: Mapping[str, int] | Iterable[tuple[str, int]]) -> ExpVec:
    """Canonical exponent vector: sorted by name, zero exponents dropped."""
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    merged: dict[str, int] = {}
    for var, exp in items:
        if exp < 0:
            raise ValueError(f"negative exponent {exp} for {var}")
        merged[var] = merged.get(var, 0) + exp
    return tuple(sorted((v, e) for v, e in merged.items() if e))


def ev_mul(a: ExpVec, b: ExpVec) -> ExpVec:
    """Product of two monomials."""
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for var, exp in b:
        merged[var] = merged.get(var, 0) + exp
    return tuple(sorted(merged.items()))


def ev_degree(ev: ExpVec) -> int:
    """Total degree of a monomial."""
    return sum(e for _, e in ev)


def ev_get(ev: ExpVec, var: str) -> int:
    """Exponent of ``var`` in a monomial (0 when absent)."""
    for v, e in ev:
        if v == var:
            return e
    return 0


def ev_without(ev: ExpVec, var: str) -> ExpVec:
    """Monomial with ``var`` removed."""
    return tuple((v, e) for v, e in ev if v != var)


def grlex_key(ev: ExpVec) -> tuple[int, tuple[tuple[str, int], ...]]:
    """Sort key placing monomials in descending graded-lex order."""
    return (-ev_degree(ev), tuple((v, -e) for v, e in ev))


Scalar = Union[int, Rat]


class MPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[ExpVec, RatLike] | None = None):
        clean: dict[ExpVec, Rat] = {}
        for ev, coeff in (terms or {}).items():
            key = make_expvec(ev)
            value = clean.get(key, ZERO) + as_rat(coeff)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _trusted(cls, terms: dict[ExpVec, Rat]) -> MPoly:
        """Wrap an already-canonical term dict without copying."""
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    # -------------------------------------------------------------------------
    # Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def zero(cls) -> MPoly:
        return cls._trusted({})

    @classmethod
    def constant(cls, value: RatLike) -> MPoly:
        value = as_rat(value)
        return cls._trusted({CONSTANT_MONOMIAL: value} if value else {})

    @classmethod
    def variable(cls, name: str) -> MPoly:
        return cls._trusted({((name, 1),): ONE})

    @classmethod
    def monomial(cls, ev: ExpVec, coeff: RatLike = 1) -> MPoly:
        return cls({ev: coeff})

    @classmethod
    def lift(cls, value: MPoly | RatLike) -> MPoly:
        """Accept either a polynomial or a scalar."""
        if isinstance(value, MPoly):
            return value
        return cls.constant(value)

    # -------------------------------------------------------------------------
    # Inspection
    # -------------------------------------------------------------------------

    @property
    def terms(self) -> Mapping[ExpVec, Rat]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[tuple[ExpVec, Rat]]:
        return iter(self._terms.items())

    def sorted_terms(self) -> list[tuple[ExpVec, Rat]]:
        """Terms in canonical graded-lex order (leading term first)."""
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]))

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(v for ev in self._terms for v, _ in ev)

    def support_vars(self) -> frozenset[str]:
        """Variables of positive degree."""
        return self.variables

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not ev for ev in self._terms)

    def constant_value(self) -> Rat:
        """Value of a constant polynomial (raises if not constant)."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(CONSTANT_MONOMIAL, ZERO)

    def coefficient(self, ev: ExpVec) -> Rat:
        return self._terms.get(ev, ZERO)

    def leading_term(self) -> tuple[ExpVec, Rat]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def degree_in(self, var: str) -> int:
        """Degree in ``var``; 0 for absent variables and for the zero polynomial."""
        return max((ev_get(ev, var) for ev in self._terms), default=0)

    def total_degree(self) -> int:
        return max((ev_degree(ev) for ev in self._terms), default=0)

    def __len__(self) -> int:
        return len(self._terms)

    # -------------------------------------------------------------------------
    # Ring arithmetic
    # -------------------------------------------------------------------------

    def __add__(self, other: MPoly | Scalar) -> MPoly:
        other = MPoly.lift(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        result = dict(big)
        for ev, coeff in small.items():
            value = result.get(ev, ZERO) + coeff
            if value:
                result[ev] = value
            else:
                result.pop(ev, None)
        return MPoly._trusted(result)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly._trusted({ev: -c for ev, c in self._terms.items()})

    def __sub__(self, other: MPoly | Scalar) -> MPoly:
        return self + (-MPoly.lift(other))

    def __rsub__(self, other: MPoly | Scalar) -> MPoly:
        return MPoly.lift(other) - self

    def scale(self, factor: RatLike) -> MPoly:
        factor = as_rat(factor)
        if not factor:
            return MPoly.zero()
        return MPoly._trusted({ev: c * factor for ev, c in self._terms.items()})

    def __mul__(self, other: MPoly | Scalar) -> MPoly:
        if not isinstance(other, MPoly):
            return self.scale(other)
        result: dict[ExpVec, Rat] = {}
        for ev_a, c_a in self._terms.items():
            for ev_b, c_b in other._terms.items():
                ev = ev_mul(ev_a, ev_b)
                value = result.get(ev, ZERO) + c_a * c_b
                if value:
                    result[ev] = value
                else:
                    result.pop(ev, None)
        return MPoly._trusted(result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> MPoly:
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = MPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # -------------------------------------------------------------------------
    # Calculus and substitution
    # -------------------------------------------------------------------------

    def derivative(self, var: str) -> MPoly:
        """Formal partial derivative (characteristic zero)."""
        result: dict[ExpVec, Rat] = {}
        for ev, coeff in self._terms.items():
            exp = ev_get(ev, var)
            if not exp:
                continue
            lowered = tuple((v, e - 1 if v == var else e) for v, e in ev)
            result[tuple((v, e) for v, e in lowered if e)] = coeff * exp
        return MPoly._trusted(result)

    def collect(self, var: str) -> dict[int, MPoly]:
        """Coefficients of powers of ``var``: self = sum(coeffs[k] * var**k)."""
        buckets: dict[int, dict[ExpVec, Rat]] = {}
        for ev, coeff in self._terms.items():
            buckets.setdefault(ev_get(ev, var), {})[ev_without(ev, var)] = coeff
        return {k: MPoly._trusted(terms) for k, terms in buckets.items()}

    def substitute(self, var: str, replacement: MPoly | Scalar) -> MPoly:
        """Replace ``var`` by a polynomial or scalar."""
        if var not in self.variables:
            return self
        replacement = MPoly.lift(replacement)
        buckets = self.collect(var)
        result = MPoly.zero()
        power = MPoly.constant(1)
        for k in range(max(buckets) + 1):
            if k in buckets:
                result = result + buckets[k] * power
            if k < max(buckets):
                power = power * replacement
        return result

    def substitute_many(self, replacements: Mapping[str, MPoly | Scalar]) -> MPoly:
        """Simultaneous substitution of several variables."""
        if not replacements:
            return self
        lifted = {var: MPoly.lift(value) for var, value in replacements.items()}
        powers: dict[tuple[str, int], MPoly] = {}

        def power_of(var: str, exp: int) -> MPoly:
            key = (var, exp)
            if key not in powers:
                powers[key] = lifted[var] ** exp
            return powers[key]

        result = MPoly.zero()
        for ev, coeff in self._terms.items():
            kept = tuple((v, e) for v, e in ev if v not in lifted)
            term = MPoly._trusted({kept: coeff})
            for v, e in ev:
                if v in lifted:
                    term = term * power_of(v, e)
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, Scalar]) -> Rat:
        """Value at a point; every variable must be assigned."""
        total = ZERO
        for ev, coeff in self._terms.items():
            term = coeff
            for var, exp in ev:
                term *= as_rat(values[var]) ** exp
            total += term
        return total

    # -------------------------------------------------------------------------
    # Dunder plumbing
    # -------------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Rat)):
            return self._terms == MPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        from polynomial_reducts.parser import render

        return render(self)

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r})"


def arith(op: str, a: MPoly, b: MPoly | int) -> MPoly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``pow`` (``b`` an exponent for pow)."""
    if op == "add":
        return a + MPoly.lift(b)
    if op == "sub":
        return a - MPoly.lift(b)
    if op == "mul":
        return a * MPoly.lift(b)
    if op == "pow":
        if not isinstance(b, int):
            raise TypeError("pow needs an integer exponent")
        return a ** b
    raise ValueError(f"unknown operation: {op}")
