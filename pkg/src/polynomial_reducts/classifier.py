#!/usr/bin/env python3
"""
Classification of polynomial collections into the four reduct cases.

A collection is

- I (unary) when every member involves at most one variable;
- II (vector space) when, failing I, every member has total degree <= 1;
- III (twisted multiplication) when, failing II, all members are monomials twisted by a
  common center r, i.e. P = c*prod((x_i - r)^e_i) + r;
- IV (full field) otherwise.

Twist centers are found without root finding: shifting every variable by a fresh
symbol s and subtracting s turns "twisted by s" into "every coefficient except the top
one vanishes", so the admissible centers are the common roots of those coefficient
polynomials in s, i.e. the roots of their gcd.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from polynomial_reducts.algebra.gcd import upoly_gcd
from polynomial_reducts.algebra.mpoly import ExpVec, MPoly, ev_get, ev_without, make_expvec
from polynomial_reducts.algebra.rational import Rat, render_rat
from polynomial_reducts.algebra.structure import RootDescriptor
from polynomial_reducts.algebra.upoly import UPoly
from polynomial_reducts.config import Settings
from polynomial_reducts.constants import SHIFT_SYMBOL, InterdefVerdict, ReductCase
from polynomial_reducts.exceptions import (
    EmptyCollectionError,
    PreconditionError,
    consistency_error,
)
from polynomial_reducts.types import (
    ClassificationDict,
    FieldWitnessDict,
    InterdefDict,
    PolyEvidenceDict,
    RootDescriptorDict,
    TwistCertificateDict,
)
from polynomial_reducts.unary import UnaryInterdefinability, interdefinable_unary

logger = logging.getLogger(__name__)


# =============================================================================
# PREDICATES
# =============================================================================

def is_unary(p: MPoly) -> bool:
    """True iff p involves at most one variable."""
    return len(p.support_vars()) <= 1


def is_linear(p: MPoly) -> bool:
    """True iff p has total degree at most 1."""
    return p.total_degree() <= 1


# =============================================================================
# TWISTED MONOMIALS
# =============================================================================

def _shift_symbol() -> MPoly:
    return MPoly.variable(SHIFT_SYMBOL)


def _top_monomial(p: MPoly) -> ExpVec:
    return make_expvec({v: p.degree_in(v) for v in p.support_vars()})


def _group_by_monomial(p: MPoly) -> dict[ExpVec, UPoly]:
    """Write p as sum over x-monomials of (polynomial in s) * monomial."""
    buckets: dict[ExpVec, dict[int, Rat]] = {}
    for ev, coeff in p.items():
        buckets.setdefault(ev_without(ev, SHIFT_SYMBOL), {})[ev_get(ev, SHIFT_SYMBOL)] = coeff
    return {
        monomial: UPoly(tuple(powers.get(i, Rat(0)) for i in range(max(powers) + 1)),
                        SHIFT_SYMBOL)
        for monomial, powers in buckets.items()
    }


def _twist_residual(p: MPoly, base_constant: Rat, exponents: ExpVec) -> MPoly:
    """c*prod((x_i - s)^e_i) + s - p, symbolic in the center s."""
    s = _shift_symbol()
    expanded = MPoly.constant(base_constant)
    for var, exp in exponents:
        expanded = expanded * (MPoly.variable(var) - s) ** exp
    return expanded + s - p


@dataclass(frozen=True)
class TwistCertificate:
    """p = base_constant * prod((x_i - center)^e_i) + center."""
    polynomial: MPoly
    center: Rat | RootDescriptor
    base_constant: Rat
    exponents: ExpVec

    def expand(self) -> MPoly:
        """Re-expansion at a rational center."""
        if isinstance(self.center, RootDescriptor):
            raise PreconditionError(
                "symbolic center cannot be expanded to a polynomial over QQ",
                requirement="rational center",
                operation="TwistCertificate.expand",
            )
        result = MPoly.constant(self.base_constant)
        for var, exp in self.exponents:
            result = result * (MPoly.variable(var) - self.center) ** exp
        return result + self.center

    def verify(self) -> bool:
        """
        Exact re-expansion check.

        For a descriptor center the identity is checked modulo its witness polynomial.
        """
        if not isinstance(self.center, RootDescriptor):
            return self.expand() == self.polynomial
        residual = _twist_residual(self.polynomial, self.base_constant, self.exponents)
        groups = _group_by_monomial(residual)
        if self.center.is_everything:
            return all(g.is_zero() for g in groups.values())
        return all(self.center.witness_poly.divides(g) for g in groups.values())

    def to_dict(self) -> TwistCertificateDict:
        center: str | RootDescriptorDict = (
            self.center.to_dict()
            if isinstance(self.center, RootDescriptor)
            else render_rat(self.center)
        )
        return {
            "polynomial": str(self.polynomial),
            "center": center,
            "base_constant": render_rat(self.base_constant),
            "exponents": dict(self.exponents),
        }


@dataclass(frozen=True)
class TwistCandidates:
    """Admissible centers of one polynomial plus certificates at its rational centers"""
    descriptor: RootDescriptor
    certificates: tuple[TwistCertificate, ...]


def twist_candidates(p: MPoly) -> TwistCandidates | None:
    """
    All centers r for which p is a monomial twisted by r.

    Returns None when there is none. The zero witness polynomial means every r works
    (p is a single variable).

    Raises:
        PreconditionError: if p is constant
    """
    if p.is_constant():
        raise PreconditionError(
            "constant polynomial; classify at collection level",
            requirement="nonconstant polynomial",
            operation="twist_candidates",
        )
    top = _top_monomial(p)
    base_constant = p.coefficient(top)
    if not base_constant:
        logger.debug("top monomial of %s is absent", p)
        return None

    s = _shift_symbol()
    shifted = p.substitute_many({v: MPoly.variable(v) + s for v in p.support_vars()}) - s
    witness = UPoly((), SHIFT_SYMBOL)
    for monomial, coeff in _group_by_monomial(shifted).items():
        if monomial == top or coeff.is_zero():
            continue
        witness = upoly_gcd(witness, coeff) if not witness.is_zero() else coeff.monic()
        if witness.is_constant():
            logger.debug("no common center for %s", p)
            return None

    descriptor = RootDescriptor.of(witness)
    certificates = tuple(
        TwistCertificate(p, root, base_constant, top) for root in descriptor.rational_roots
    )
    logger.debug("twist witness of %s is %s", p, witness)
    return TwistCandidates(descriptor, certificates)


def _constant_descriptor(value: Rat) -> RootDescriptor:
    # A constant c is the twisted monomial with a = r only when c = r
    return RootDescriptor.of(UPoly((-value, Rat(1)), SHIFT_SYMBOL))


def _descriptor_of(p: MPoly) -> RootDescriptor | None:
    if p.is_constant():
        return _constant_descriptor(p.constant_value())
    candidates = twist_candidates(p)
    return candidates.descriptor if candidates else None


def common_twist(ps: Sequence[MPoly]) -> RootDescriptor | None:
    """
    Centers shared by every member, or None when there are none.

    Raises:
        EmptyCollectionError: if ps is empty
    """
    if not ps:
        raise EmptyCollectionError("empty collection", operation="common_twist")
    return _meet_all(_descriptor_of(p) for p in ps)


def _meet_all(descriptors: Iterable[RootDescriptor | None]) -> RootDescriptor | None:
    shared: RootDescriptor | None = None
    for descriptor in descriptors:
        if descriptor is None:
            return None
        shared = descriptor if shared is None else shared.meet(descriptor)
        if shared.is_empty:
            return None
    return shared


def certificate_at(p: MPoly, center: Rat | RootDescriptor) -> TwistCertificate:
    """Twist certificate of p at a known center."""
    if p.is_constant():
        value = p.constant_value()
        base = value - center if not isinstance(center, RootDescriptor) else Rat(0)
        return TwistCertificate(p, center, base, ())
    top = _top_monomial(p)
    return TwistCertificate(p, center, p.coefficient(top), top)


# =============================================================================
# GENERIC SPECIALIZATION
# =============================================================================

@dataclass(frozen=True)
class Specialization:
    """A binary polynomial obtained by fixing all but two variables."""
    polynomial: MPoly
    x: str
    y: str
    assignments: dict[str, Rat] = field(default_factory=dict)


def _random_rational(rng: random.Random, height: int) -> Rat:
    return Rat(rng.randint(-height, height), rng.randint(1, height))


def _pick_pair(p: MPoly) -> tuple[str, str]:
    support = sorted(p.support_vars())
    terms = p.sorted_terms()
    for ev, _ in terms:
        if len(ev) >= 2:
            return ev[0][0], ev[1][0]
    for ev, _ in terms:
        if sum(e for _, e in ev) >= 2:
            carrier = ev[0][0]
            other = next(v for v in support if v != carrier)
            return min(carrier, other), max(carrier, other)
    return support[0], support[1]


def specialize_to_binary(p: MPoly, settings: Settings | None = None) -> Specialization:
    """
    Substitute generic rationals for all but two variables of p.

    The kept pair carries a monomial of total degree >= 2 when p is non-linear. A
    candidate is accepted only if it keeps the degrees of p in both kept variables and,
    for non-linear p, total degree >= 2.

    Raises:
        PreconditionError: if p has fewer than two variables or no point works
    """
    settings = settings or Settings()
    support = sorted(p.support_vars())
    if len(support) < 2:
        raise PreconditionError(
            "specialization needs at least two variables",
            requirement="|support| >= 2",
            operation="specialize_to_binary",
        )
    x, y = _pick_pair(p)
    if len(support) == 2:
        return Specialization(p, x, y)

    others = [v for v in support if v not in (x, y)]
    rng = random.Random(settings.seed)
    for attempt in range(settings.attempts):
        assignment = {v: _random_rational(rng, settings.height) for v in others}
        candidate = p.substitute_many(assignment)
        if (
            candidate.degree_in(x) == p.degree_in(x)
            and candidate.degree_in(y) == p.degree_in(y)
            and (is_linear(p) or candidate.total_degree() >= 2)
            and candidate.support_vars() == {x, y}
        ):
            logger.debug("specialized %s at attempt %d: %s", p, attempt, assignment)
            return Specialization(candidate, x, y, assignment)
    raise PreconditionError(
        f"no generic specialization found in {settings.attempts} attempts",
        requirement="a point preserving degrees",
        operation="specialize_to_binary",
    )


@dataclass(frozen=True)
class FieldWitness:
    """A binary polynomial and a non-linear unary polynomial definable from a collection."""
    binary: MPoly
    binary_variables: tuple[str, str]
    unary: MPoly
    unary_method: str

    def to_dict(self) -> FieldWitnessDict:
        return {
            "binary": str(self.binary),
            "binary_variables": list(self.binary_variables),
            "unary": str(self.unary),
            "unary_method": self.unary_method,
        }


def _unary_from_binary(spec: Specialization, settings: Settings) -> tuple[MPoly, str]:
    q, x, y = spec.polynomial, spec.x, spec.y
    if q.degree_in(x) == 1 and q.degree_in(y) == 1:
        return q.substitute(y, MPoly.variable(x)), f"diagonal {x} = {y}"
    keep, fix = (x, y) if q.degree_in(x) >= 2 else (y, x)
    rng = random.Random(settings.seed + 1)
    for _ in range(settings.attempts):
        value = _random_rational(rng, settings.height)
        line = q.substitute(fix, value)
        if line.degree_in(keep) == q.degree_in(keep):
            return line, f"line {fix} = {render_rat(value)}"
    raise PreconditionError(
        "no generic line found",
        requirement="a line preserving degree",
        operation="field_witness",
    )


def field_witness(ps: Sequence[MPoly], settings: Settings | None = None) -> FieldWitness:
    """
    Witness that a collection defines a field: a binary polynomial depending on both
    variables and a non-linear unary polynomial.

    Raises:
        PreconditionError: if the collection has no member with two variables, or no
            non-linear member
    """
    settings = settings or Settings()
    ps = canonical_order(ps)
    multi = [p for p in ps if len(p.support_vars()) >= 2]
    if not multi:
        raise PreconditionError("no member involves two variables", operation="field_witness")
    nonlinear_multi = [p for p in multi if not is_linear(p)]
    source = nonlinear_multi[0] if nonlinear_multi else multi[0]
    binary = specialize_to_binary(source, settings)

    nonlinear_unary = [p for p in ps if is_unary(p) and not is_linear(p)]
    if nonlinear_unary:
        unary, method = nonlinear_unary[0], "member"
    elif nonlinear_multi:
        unary, method = _unary_from_binary(binary, settings)
    else:
        raise PreconditionError("every member is linear", operation="field_witness")

    if binary.polynomial.support_vars() != {binary.x, binary.y} or not is_unary(unary) \
            or is_linear(unary):
        raise consistency_error(
            "field witness failed its re-check",
            expected_state="binary in two variables, non-linear unary",
            actual_state=f"binary={binary.polynomial}, unary={unary}",
        )
    return FieldWitness(binary.polynomial, (binary.x, binary.y), unary, method)


def defines_field(p: MPoly) -> bool:
    """True iff p alone defines + and x: two variables, not linear, not twisted."""
    return len(p.support_vars()) >= 2 and not is_linear(p) and twist_candidates(p) is None


# =============================================================================
# CLASSIFICATION
# =============================================================================

@dataclass(frozen=True)
class PolyEvidence:
    """Which tests one member passed"""
    polynomial: MPoly
    unary: bool
    linear: bool
    twist: RootDescriptor | None

    def to_dict(self) -> PolyEvidenceDict:
        return {
            "polynomial": str(self.polynomial),
            "variables": sorted(self.polynomial.support_vars()),
            "unary": self.unary,
            "linear": self.linear,
            "twist": self.twist.to_dict() if self.twist else None,
        }


@dataclass(frozen=True)
class ClassificationReport:
    """Case verdict for a collection with its witnesses."""
    case: ReductCase
    evidence: tuple[PolyEvidence, ...]
    generators: tuple[Rat, ...] | None = None
    center: RootDescriptor | None = None
    certificates: tuple[TwistCertificate, ...] = ()
    reason: str | None = None
    field_witness: FieldWitness | None = None
    notes: tuple[str, ...] = ()

    @property
    def unique_center(self) -> Rat | None:
        return self.center.unique_rational if self.center else None

    def to_dict(self) -> ClassificationDict:
        unique = self.unique_center
        return {
            "case": self.case.value,
            "generators": (
                [render_rat(g) for g in self.generators] if self.generators is not None else None
            ),
            "center": self.center.to_dict() if self.center else None,
            "unique_center": render_rat(unique) if unique is not None else None,
            "certificates": [c.to_dict() for c in self.certificates],
            "evidence": [e.to_dict() for e in self.evidence],
            "reason": self.reason,
            "field_witness": self.field_witness.to_dict() if self.field_witness else None,
            "notes": list(self.notes),
        }


def canonical_order(ps: Iterable[MPoly]) -> list[MPoly]:
    """Members sorted by (total degree, rendering); duplicates kept."""
    return sorted(ps, key=lambda p: (p.total_degree(), str(p)))


def _generators(ps: Sequence[MPoly]) -> tuple[Rat, ...]:
    coefficients = [c for p in ps for ev, c in p.items() if ev]
    return tuple(sorted(coefficients))


def _case_iv_reason(evidence: Sequence[PolyEvidence]) -> str:
    for item in evidence:
        if not item.linear and item.twist is None:
            return f"{item.polynomial} is neither linear nor a twisted monomial"
    linear_only = [e for e in evidence if e.twist is None]
    twisted_nonlinear = [e for e in evidence if not e.linear]
    if linear_only and twisted_nonlinear:
        return (
            f"mixed collection: {linear_only[0].polynomial} is linear but not twisted, "
            f"{twisted_nonlinear[0].polynomial} is twisted but not linear"
        )
    return "twisted members share no common center"


def classify(ps: Sequence[MPoly], settings: Settings | None = None) -> ClassificationReport:
    """
    Decide the reduct case of a collection and attach its certificate.

    Members are taken in canonical order, so permuting ps gives the same report.

    Raises:
        EmptyCollectionError: if ps is empty
    """
    if not ps:
        raise EmptyCollectionError("empty collection", operation="classify")
    ps = canonical_order(ps)

    evidence = tuple(
        PolyEvidence(p, is_unary(p), is_linear(p), _descriptor_of(p)) for p in ps
    )

    if all(e.unary for e in evidence):
        notes: tuple[str, ...] = ()
        shared = _meet_all(e.twist for e in evidence)
        if shared is not None and shared.unique_rational is not None:
            notes = (
                "case_I_precedence: every member is a unary twisted monomial with center "
                f"{render_rat(shared.unique_rational)}; the unary case takes precedence",
            )
        report = ClassificationReport(ReductCase.UNARY, evidence, notes=notes)
    elif all(e.linear for e in evidence):
        report = ClassificationReport(
            ReductCase.VECTOR_SPACE, evidence, generators=_generators(ps)
        )
    else:
        shared = _meet_all(e.twist for e in evidence)
        if shared is not None:
            center: Rat | RootDescriptor = (
                shared.unique_rational if shared.unique_rational is not None else shared
            )
            certificates = tuple(certificate_at(p, center) for p in ps)
            for certificate in certificates:
                if not certificate.verify():
                    raise consistency_error(
                        "twist certificate does not re-expand",
                        expected_state=str(certificate.polynomial),
                        actual_state="residual nonzero",
                    )
            report = ClassificationReport(
                ReductCase.TWISTED_MULT, evidence, center=shared, certificates=certificates
            )
        else:
            report = ClassificationReport(
                ReductCase.FULL_FIELD,
                evidence,
                reason=_case_iv_reason(evidence),
                field_witness=field_witness(ps, settings),
            )

    logger.info("classified %d polynomials as %s", len(ps), report.case.value)
    return report


# =============================================================================
# INTERDEFINABILITY
# =============================================================================

@dataclass(frozen=True)
class InterdefResult:
    """Verdict on whether two collections define the same structure"""
    verdict: InterdefVerdict
    explanation: str
    report_a: ClassificationReport
    report_b: ClassificationReport
    unary: UnaryInterdefinability | None = None

    def diagnostics(self) -> list[str]:
        return self.unary.diagnostics() if self.unary else []

    def to_dict(self) -> InterdefDict:
        return {
            "verdict": self.verdict.value,
            "explanation": self.explanation,
            "cases": [self.report_a.case.value, self.report_b.case.value],
            "unary": self.unary.to_dict() if self.unary else None,
        }


def interdefinable(
    ps_a: Sequence[MPoly],
    ps_b: Sequence[MPoly],
    settings: Settings | None = None,
) -> InterdefResult:
    """
    Compare the structures generated by two collections.

    Raises:
        EmptyCollectionError: if either collection is empty
    """
    report_a, report_b = classify(ps_a, settings), classify(ps_b, settings)

    def result(verdict: InterdefVerdict, explanation: str,
               unary: UnaryInterdefinability | None = None) -> InterdefResult:
        return InterdefResult(verdict, explanation, report_a, report_b, unary)

    if report_a.case is not report_b.case:
        return result(
            InterdefVerdict.NO,
            f"different cases: {report_a.case.value} vs {report_b.case.value}",
        )

    case = report_a.case
    if case is ReductCase.UNARY:
        if len(ps_a) == 1 and len(ps_b) == 1:
            unary = interdefinable_unary(UPoly.from_mpoly(ps_a[0]), UPoly.from_mpoly(ps_b[0]))
            verdict = InterdefVerdict.YES if unary.interdefinable else InterdefVerdict.NO
            return result(verdict, unary.explanation, unary)
        return result(
            InterdefVerdict.UNDETERMINED_CASE_I,
            "interdefinability is only decided for single unary polynomials",
        )

    if case is ReductCase.VECTOR_SPACE:
        return result(
            InterdefVerdict.YES,
            "both are vector-space reducts; rational coefficients generate QQ on both sides",
        )

    if case is ReductCase.TWISTED_MULT:
        if report_a.center == report_b.center:
            shown = report_a.unique_center
            label = render_rat(shown) if shown is not None else "the same witness roots"
            return result(InterdefVerdict.YES, f"both are multiplication twisted by {label}")
        return result(
            InterdefVerdict.NO,
            "twist centers differ: "
            f"{_center_label(report_a)} vs {_center_label(report_b)}",
        )

    explanation = "both define the full field structure"
    if len(ps_a) == 1 and len(ps_b) == 1 and defines_field(ps_a[0]) and defines_field(ps_b[0]):
        explanation = (
            "each polynomial involves two variables and is neither linear nor a twisted "
            "monomial, so each alone defines + and x"
        )
    return result(InterdefVerdict.YES, explanation)


def _center_label(report: ClassificationReport) -> str:
    unique = report.unique_center
    if unique is not None:
        return render_rat(unique)
    return str(report.center.witness_poly) if report.center else "none"
