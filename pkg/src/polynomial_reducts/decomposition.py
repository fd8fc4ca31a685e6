#!/usr/bin/env python3
"""
Additive and multiplicative decompositions of bivariate polynomials.

Both detectors start from the lowest-terms ratio of the partial derivatives. For
P = f(u(x) + v(y)) the ratio P_x / P_y is u'(x) / v'(y); for P = f(u(x) * v(y)) it is
u'(x) v(y) / (u(x) v'(y)). The candidate inner functions are read off the ratio, the
outer f is recovered on one specialization line, and every certificate is accepted only
after full re-expansion against P.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import TypeVar

from polynomial_reducts.algebra.gcd import reduce_fraction, upoly_gcd
from polynomial_reducts.algebra.mpoly import MPoly, ev_get, ev_without
from polynomial_reducts.algebra.rational import ZERO, Rat, render_rat
from polynomial_reducts.algebra.structure import (
    bivariate_roles,
    linear_constraint_rows,
    rank1_separate,
    rational_nullspace,
)
from polynomial_reducts.algebra.upoly import (
    UPoly,
    inner_compose_solve,
    poly_kth_root,
    rational_roots,
)
from polynomial_reducts.constants import OUTER_SYMBOL, ERTag
from polynomial_reducts.exceptions import consistency_error
from polynomial_reducts.types import (
    DecompositionDict,
    ERVerdictDict,
    StrongAdditiveDict,
    StrongMultiplicativeDict,
)

logger = logging.getLogger(__name__)


# =============================================================================
# CERTIFICATES
# =============================================================================

@dataclass(frozen=True)
class StrongAdditive:
    """P = f_adjusted(c1*u_common(x) + c2*u_common(y)); u_common is in ``t``."""
    u_common: UPoly
    c1: Rat
    c2: Rat
    f_adjusted: UPoly

    def expand(self, x: str, y: str) -> MPoly:
        inner = (
            self.u_common.with_var(x).to_mpoly().scale(self.c1)
            + self.u_common.with_var(y).to_mpoly().scale(self.c2)
        )
        return self.f_adjusted.compose_mpoly(inner)

    def to_dict(self) -> StrongAdditiveDict:
        return {
            "u_common": str(self.u_common),
            "c1": render_rat(self.c1),
            "c2": render_rat(self.c2),
            "f_adjusted": str(self.f_adjusted),
        }


@dataclass(frozen=True)
class StrongMultiplicative:
    """P = f_adjusted(u0(x)^m * u0(y)^n); u0 is monic in ``t``."""
    u0: UPoly
    m: int
    n: int
    f_adjusted: UPoly

    def expand(self, x: str, y: str) -> MPoly:
        inner = (self.u0.with_var(x).to_mpoly() ** self.m) * (
            self.u0.with_var(y).to_mpoly() ** self.n
        )
        return self.f_adjusted.compose_mpoly(inner)

    def to_dict(self) -> StrongMultiplicativeDict:
        return {"u0": str(self.u0), "m": self.m, "n": self.n, "f_adjusted": str(self.f_adjusted)}


@dataclass(frozen=True)
class AdditiveDecomp:
    """P = f(u(x) + v(y))."""
    f: UPoly
    u: UPoly
    v: UPoly
    strong: StrongAdditive | None = None
    constant_lines_x: tuple[Rat, ...] = ()
    constant_lines_y: tuple[Rat, ...] = ()

    def expand(self) -> MPoly:
        return self.f.compose_mpoly(self.u.to_mpoly() + self.v.to_mpoly())

    def to_dict(self) -> DecompositionDict:
        return {
            "kind": "additive",
            "f": str(self.f),
            "u": str(self.u),
            "v": str(self.v),
            "strong": self.strong.to_dict() if self.strong else None,
            "constant_lines_x": [render_rat(a) for a in self.constant_lines_x],
            "constant_lines_y": [render_rat(a) for a in self.constant_lines_y],
        }


@dataclass(frozen=True)
class MultiplicativeDecomp:
    """P = f(u(x) * v(y))."""
    f: UPoly
    u: UPoly
    v: UPoly
    strong: StrongMultiplicative | None = None
    constant_lines_x: tuple[Rat, ...] = ()
    constant_lines_y: tuple[Rat, ...] = ()

    def expand(self) -> MPoly:
        return self.f.compose_mpoly(self.u.to_mpoly() * self.v.to_mpoly())

    def to_dict(self) -> DecompositionDict:
        return {
            "kind": "multiplicative",
            "f": str(self.f),
            "u": str(self.u),
            "v": str(self.v),
            "strong": self.strong.to_dict() if self.strong else None,
            "constant_lines_x": [render_rat(a) for a in self.constant_lines_x],
            "constant_lines_y": [render_rat(a) for a in self.constant_lines_y],
        }


Decomposition = AdditiveDecomp | MultiplicativeDecomp
D = TypeVar("D", AdditiveDecomp, MultiplicativeDecomp)


@dataclass(frozen=True)
class ERVerdict:
    """Additive, Multiplicative or Neither, with the certificate when there is one."""
    tag: ERTag
    certificate: Decomposition | None
    variables: tuple[str, str]

    def __post_init__(self) -> None:
        expected = {
            ERTag.ADDITIVE: AdditiveDecomp,
            ERTag.MULTIPLICATIVE: MultiplicativeDecomp,
        }.get(self.tag)
        if (expected is None) != (self.certificate is None) or (
            expected is not None and not isinstance(self.certificate, expected)
        ):
            raise consistency_error(
                "verdict tag does not match certificate",
                expected_state=self.tag.value,
                actual_state=type(self.certificate).__name__,
            )

    @property
    def is_strong(self) -> bool:
        return self.certificate is not None and self.certificate.strong is not None

    def to_dict(self) -> ERVerdictDict:
        return {
            "tag": self.tag.value,
            "strong": self.is_strong,
            "variables": list(self.variables),
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


# =============================================================================
# HELPERS
# =============================================================================

def _line(P: MPoly, y: str, value: int, x: str) -> UPoly:
    return UPoly.from_mpoly(P.substitute(y, value), x)


def _specialization_points(P: MPoly, y: str, extra_roots: int = 0) -> range:
    # Among deg_y(P) + extra + 1 integers at least one avoids every degeneracy
    return range(P.degree_in(y) + extra_roots + 1)


def _scale_outer(f: UPoly, factor: Rat, shift: Rat = ZERO) -> UPoly:
    """t -> f(factor * t + shift)."""
    return f.compose(UPoly((shift, factor), OUTER_SYMBOL))


def constant_lines(P: MPoly, var: str) -> tuple[Rat, ...] | None:
    """
    Rational a with P constant on the line var = a.

    Returns None when P does not depend on the other variables at all (every line is
    constant).
    """
    groups: dict[tuple[tuple[str, int], ...], dict[int, Rat]] = {}
    for ev, coeff in P.items():
        rest = ev_without(ev, var)
        if rest:
            groups.setdefault(rest, {})[ev_get(ev, var)] = coeff
    if not groups:
        return None
    common = UPoly((), var)
    for powers in groups.values():
        g = UPoly(tuple(powers.get(i, ZERO) for i in range(max(powers) + 1)), var)
        common = upoly_gcd(common, g) if not common.is_zero() else g.monic()
        if common.is_constant():
            return ()
    return tuple(rational_roots(common))


def _with_lines(dec: D, P: MPoly, x: str, y: str) -> D:
    return replace(
        dec,
        constant_lines_x=constant_lines(P, x) or (),
        constant_lines_y=constant_lines(P, y) or (),
    )


# =============================================================================
# WEAK DETECTORS
# =============================================================================

def weak_additive(P: MPoly) -> AdditiveDecomp | None:
    """
    Find f, u, v with P = f(u(x) + v(y)); u is monic, u and v have zero constant term.

    Raises:
        ShapeError: if P is not genuinely bivariate
    """
    x, y = bivariate_roles(P, "weak_additive")
    num, den = reduce_fraction(P.derivative(x), P.derivative(y))
    if not num.support_vars() <= {x} or not den.support_vars() <= {y}:
        logger.debug("additive: ratio %s / %s does not separate", num, den)
        return None

    u = UPoly.from_mpoly(num, x).antiderivative()
    v = UPoly.from_mpoly(den, y).antiderivative()
    degree = P.degree_in(x)
    for y0 in _specialization_points(P, y):
        line = _line(P, y, y0, x)
        if line.degree == degree:
            break
    else:
        return None
    logger.debug("additive: specializing %s = %d", y, y0)

    f = inner_compose_solve(line, u + v(y0))
    if f is None:
        return None
    decomp = AdditiveDecomp(f, u, v)
    if decomp.expand() != P:
        logger.debug("additive: candidate failed re-expansion")
        return None

    scale = u.lc
    normalized = AdditiveDecomp(
        _scale_outer(f, scale), u.scale(1 / scale), v.scale(1 / scale)
    )
    return _with_lines(normalized, P, x, y)


def _solve_log_derivative(
    lower: UPoly, upper: UPoly, scalar: Rat, degree: int, var: str
) -> UPoly | None:
    """Nonzero w of exact degree with lower*w' = scalar*upper*w, if any."""
    images = []
    for i in range(degree + 1):
        basis = UPoly.of([0] * i + [1], var)
        images.append(lower * basis.derivative() - (upper * basis).scale(scalar))
    rows = linear_constraint_rows(images)
    for vector in rational_nullspace(rows, degree + 1):
        if vector[degree]:
            return UPoly(tuple(vector), var).monic()
    return None


def weak_multiplicative(P: MPoly) -> MultiplicativeDecomp | None:
    """
    Find f, u, v with P = f(u(x) * v(y)); u and v are monic.

    Raises:
        ShapeError: if P is not genuinely bivariate
    """
    x, y = bivariate_roles(P, "weak_multiplicative")
    num, den = reduce_fraction(P.derivative(x), P.derivative(y))
    split_num = rank1_separate(num, x, y)
    split_den = rank1_separate(den, x, y)
    if split_num is None or split_den is None:
        logger.debug("multiplicative: ratio %s / %s is not rank one", num, den)
        return None
    n1, n2 = split_num
    d1, d2 = split_den
    # d1*u' = lam*n1*u and n2*v' = lam*d2*v
    if d1.degree != n1.degree + 1 or n2.degree != d2.degree + 1:
        return None

    u = v = None
    for k in range(1, P.degree_in(x) + 1):
        lam = k * d1.lc / n1.lc
        j = lam * d2.lc / n2.lc
        if j.denominator != 1 or j <= 0:
            continue
        u = _solve_log_derivative(d1, n1, lam, k, x)
        v = _solve_log_derivative(n2.with_var(y), d2.with_var(y), lam, int(j), y)
        if u is not None and v is not None:
            logger.debug("multiplicative: degrees %d, %d", k, int(j))
            break
    if u is None or v is None:
        return None

    degree = P.degree_in(x)
    f = None
    for y0 in _specialization_points(P, y, v.degree):
        if not v(y0):
            continue
        line = _line(P, y, y0, x)
        if line.degree != degree:
            continue
        f = inner_compose_solve(line, u.scale(v(y0)))
        break
    if f is None:
        return None

    decomp = MultiplicativeDecomp(f, u, v)
    if decomp.expand() != P:
        logger.debug("multiplicative: candidate failed re-expansion")
        return None
    return _with_lines(decomp, P, x, y)


# =============================================================================
# STRONG FORMS
# =============================================================================

def strengthen_additive(dec: AdditiveDecomp, P: MPoly) -> StrongAdditive | None:
    """
    Rewrite f(u(x) + v(y)) as f_adjusted(c1*u_common(x) + c2*u_common(y)).

    Succeeds iff deg u = deg v and v = lam*u + mu.
    """
    x, y = dec.u.var, dec.v.var
    u, v = dec.u, dec.v
    if u.degree != v.degree:
        return None
    lam = v.lc / u.lc
    mu = v.coeff(0) - lam * u.coeff(0)
    if v.with_var(x) != u.scale(lam) + mu:
        return None

    a, b = u.lc, u.coeff(0)
    u_common = ((u - b).scale(1 / a)).with_var(OUTER_SYMBOL)
    strong = StrongAdditive(
        u_common=u_common,
        c1=Fraction(1),
        c2=lam,
        f_adjusted=_scale_outer(dec.f, a, b + lam * b + mu),
    )
    if strong.expand(x, y) != P:
        raise consistency_error(
            "strong additive form does not re-expand",
            expected_state=str(P),
            actual_state=str(strong.expand(x, y)),
        )
    if P.degree_in(x) != P.degree_in(y):
        raise consistency_error(
            "strongly additive polynomial with unequal partial degrees",
            expected_state="deg_x = deg_y",
            actual_state=f"{P.degree_in(x)} != {P.degree_in(y)}",
        )
    return strong


def strengthen_multiplicative(
    dec: MultiplicativeDecomp, P: MPoly
) -> StrongMultiplicative | None:
    """
    Rewrite f(u(x) * v(y)) as f_adjusted(u0(x)^m * u0(y)^n) with u0 monic.

    Candidate degrees of u0 are the common divisors of deg u and deg v, smallest first.
    """
    x, y = dec.u.var, dec.v.var
    common = gcd(dec.u.degree, dec.v.degree)
    for d in range(1, common + 1):
        if common % d:
            continue
        m, n = dec.u.degree // d, dec.v.degree // d
        root_u = poly_kth_root(dec.u, m)
        root_v = poly_kth_root(dec.v, n)
        if root_u is None or root_v is None:
            continue
        (u0, alpha), (v0, beta) = root_u, root_v
        if u0.coeffs != v0.coeffs:
            continue
        strong = StrongMultiplicative(
            u0=u0.with_var(OUTER_SYMBOL), m=m, n=n, f_adjusted=_scale_outer(dec.f, alpha * beta)
        )
        if strong.expand(x, y) != P:
            raise consistency_error(
                "strong multiplicative form does not re-expand",
                expected_state=str(P),
                actual_state=str(strong.expand(x, y)),
            )
        return strong
    logger.debug("multiplicative: no common base for %s and %s", dec.u, dec.v)
    return None


# =============================================================================
# VERDICT
# =============================================================================

def er_classify(P: MPoly) -> ERVerdict:
    """
    Additive, Multiplicative or Neither, with strengthened certificates when possible.

    Raises:
        ShapeError: if P is not genuinely bivariate
        ConsistencyError: if both weak detectors succeed
    """
    variables = bivariate_roles(P, "er_classify")
    additive = weak_additive(P)
    multiplicative = weak_multiplicative(P)
    if additive is not None and multiplicative is not None:
        raise consistency_error(
            "polynomial is both weakly additive and weakly multiplicative",
            expected_state="at most one decomposition",
            actual_state="both",
            polynomial=str(P),
        )
    if additive is not None:
        additive = replace(additive, strong=strengthen_additive(additive, P))
        verdict = ERVerdict(ERTag.ADDITIVE, additive, variables)
    elif multiplicative is not None:
        multiplicative = replace(
            multiplicative, strong=strengthen_multiplicative(multiplicative, P)
        )
        verdict = ERVerdict(ERTag.MULTIPLICATIVE, multiplicative, variables)
    else:
        verdict = ERVerdict(ERTag.NEITHER, None, variables)
    logger.info("%s is %s (strong: %s)", P, verdict.tag.value, verdict.is_strong)
    return verdict
