#!/usr/bin/env python3
"""
Tests for twist detection, reduct classification and interdefinability.
"""

import random
from fractions import Fraction

import pytest

from polynomial_reducts.algebra.mpoly import MPoly
from polynomial_reducts.algebra.upoly import UPoly
from polynomial_reducts.classifier import (
    certificate_at,
    classify,
    common_twist,
    defines_field,
    field_witness,
    interdefinable,
    is_linear,
    is_unary,
    specialize_to_binary,
    twist_candidates,
)
from polynomial_reducts.config import Settings
from polynomial_reducts.constants import InterdefVerdict, ReductCase
from polynomial_reducts.exceptions import EmptyCollectionError, PreconditionError
from polynomial_reducts.parser import parse_poly

SHOWCASE = "x^17 + x^6*y^8 - y^3"


def polys(*texts: str) -> list[MPoly]:
    return [parse_poly(t) for t in texts]


def planted_twist(rng: random.Random) -> tuple[MPoly, Fraction]:
    """c*prod((x_i - r)^e_i) + r with 1..3 variables and exponent sum in 2..6."""
    variables = ["x", "y", "z"][: rng.randint(1, 3)]
    while True:
        exponents = [rng.randint(1, 3) for _ in variables]
        if 2 <= sum(exponents) <= 6:
            break
    r = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
    p = MPoly.constant(c)
    for var, exp in zip(variables, exponents):
        p = p * (MPoly.variable(var) - r) ** exp
    return p + r, r


def random_upoly(rng: random.Random, degree: int, var: str) -> UPoly:
    coeffs = [rng.randint(-3, 3) for _ in range(degree)]
    return UPoly.of(coeffs + [rng.choice([-2, -1, 1, 2])], var)


def random_member(rng: random.Random, max_degree: int = 5) -> MPoly:
    """Random member mixing linear, twisted, unary and generic shapes."""
    x, y = MPoly.variable("x"), MPoly.variable("y")
    shape = rng.randrange(4)
    if shape == 0:
        return rng.randint(-3, 3) * x + rng.randint(-3, 3) * y + rng.randint(-3, 3)
    if shape == 1:
        r = rng.randint(-2, 2)
        return rng.choice([-2, 1, 3]) * (x - r) ** rng.randint(1, 2) * (y - r) + r
    if shape == 2:
        return random_upoly(rng, rng.randint(1, max_degree), "x").to_mpoly()
    p = MPoly.constant(rng.randint(-3, 3))
    for _ in range(rng.randint(1, 3)):
        i = rng.randint(0, max_degree)
        j = rng.randint(0, max_degree - i)
        p = p + rng.choice([-2, -1, 1, 2]) * x**i * y**j
    return p


class TestPredicates:
    """Test unary / linear predicates"""

    def test_is_unary(self):
        assert is_unary(parse_poly("x^5 + 1"))
        assert is_unary(parse_poly("7"))
        assert not is_unary(parse_poly("x + y"))

    def test_is_linear(self):
        assert is_linear(parse_poly("2*x - 3*y + 1"))
        assert not is_linear(parse_poly("x*y"))


class TestTwistDetection:
    """Test shift-gcd twist detection"""

    def test_product_twisted_at_one(self):
        candidates = twist_candidates(parse_poly("(x-1)*(y-1)+1"))
        assert candidates is not None
        assert candidates.descriptor.unique_rational == 1
        assert candidates.certificates[0].verify()

    def test_product_centered_at_zero(self):
        candidates = twist_candidates(parse_poly("x*y"))
        assert candidates is not None
        assert candidates.descriptor.unique_rational == 0

    def test_identity_admits_every_center(self):
        candidates = twist_candidates(parse_poly("x"))
        assert candidates is not None
        assert candidates.descriptor.is_everything

    def test_linear_sum_is_not_twisted(self):
        assert twist_candidates(parse_poly("x + y")) is None

    def test_showcase_is_not_twisted(self):
        assert twist_candidates(parse_poly(SHOWCASE)) is None

    def test_constant_rejected(self):
        with pytest.raises(PreconditionError):
            twist_candidates(parse_poly("3"))

    def test_planted_twists_are_recovered(self):
        rng = random.Random(2024)
        for _ in range(300):
            p, r = planted_twist(rng)
            candidates = twist_candidates(p)
            assert candidates is not None, str(p)
            assert candidates.descriptor.witness_poly.degree == 1
            assert candidates.descriptor.unique_rational == r
            assert all(c.expand() == p for c in candidates.certificates)

    def test_certificate_fields(self):
        certificate = certificate_at(parse_poly("2*(x-1)^2*(y-1) + 1"), Fraction(1))
        assert certificate.base_constant == 2
        assert dict(certificate.exponents) == {"x": 2, "y": 1}
        assert certificate.verify()
        assert certificate.to_dict()["center"] == "1"


class TestCommonTwist:
    """Test centers shared by a collection"""

    def test_shared_center(self):
        shared = common_twist(polys("x*y - x - y + 2", "(x-1)^2*(y-1) + 1"))
        assert shared is not None
        assert shared.unique_rational == 1

    def test_no_shared_center(self):
        assert common_twist(polys("x*y", "(x-1)*(y-1)+1")) is None

    def test_constant_member_pins_center(self):
        shared = common_twist(polys("x", "5"))
        assert shared is not None
        assert shared.unique_rational == 5

    def test_empty(self):
        with pytest.raises(EmptyCollectionError):
            common_twist([])


class TestSpecialization:
    """Test generic specialization and field witnesses"""

    def test_two_variables_kept_as_is(self):
        spec = specialize_to_binary(parse_poly("x^2 + y^2"))
        assert spec.polynomial == parse_poly("x^2 + y^2")
        assert spec.assignments == {}

    def test_third_variable_fixed(self):
        p = parse_poly("x*y*z + z^2")
        spec = specialize_to_binary(p, Settings(seed=3))
        assert (spec.x, spec.y) == ("x", "y")
        assert set(spec.assignments) == {"z"}
        assert spec.polynomial.support_vars() == frozenset({"x", "y"})
        assert spec.polynomial.degree_in("x") == 1

    def test_specialization_is_seeded(self):
        p = parse_poly("x*y*z + z^2 + w*x")
        first = specialize_to_binary(p, Settings(seed=9))
        second = specialize_to_binary(p, Settings(seed=9))
        assert first == second

    def test_needs_two_variables(self):
        with pytest.raises(PreconditionError):
            specialize_to_binary(parse_poly("x^2"))

    def test_field_witness_uses_unary_member(self):
        witness = field_witness(polys("x + y", "x^2"))
        assert witness.unary == parse_poly("x^2")
        assert witness.unary_method == "member"

    def test_field_witness_from_bilinear_diagonal(self):
        witness = field_witness(polys("x*y + 1"))
        assert witness.unary == parse_poly("x^2 + 1")
        assert witness.unary_method == "diagonal x = y"

    def test_field_witness_from_line(self):
        witness = field_witness(polys(SHOWCASE))
        assert witness.unary.support_vars() == frozenset({"x"})
        assert witness.unary.degree_in("x") == 17
        assert witness.unary_method.startswith("line y = ")

    def test_defines_field(self):
        assert defines_field(parse_poly("x^2 + y^2"))
        assert not defines_field(parse_poly("x*y"))
        assert not defines_field(parse_poly("x + y"))
        assert not defines_field(parse_poly("x^3"))


class TestClassify:
    """Test the four-way classification"""

    def test_showcase_is_full_field(self):
        report = classify(polys(SHOWCASE))
        assert report.case is ReductCase.FULL_FIELD
        assert "neither linear nor a twisted monomial" in report.reason
        assert report.field_witness is not None

    def test_sum_of_squares_is_full_field(self):
        assert classify(polys("x^2 + y^2")).case is ReductCase.FULL_FIELD

    def test_vector_space_generators(self):
        report = classify(polys("x + y"))
        assert report.case is ReductCase.VECTOR_SPACE
        assert report.to_dict()["generators"] == ["1", "1"]

    def test_vector_space_rational_generators(self):
        report = classify(polys("2*x - 1/3*y", "x + 4"))
        assert report.case is ReductCase.VECTOR_SPACE
        assert report.to_dict()["generators"] == ["-1/3", "1", "2"]

    def test_twisted_multiplication(self):
        report = classify(polys("x*y - x - y + 2", "(x-1)^2*(y-1) + 1"))
        assert report.case is ReductCase.TWISTED_MULT
        assert report.unique_center == 1
        assert all(c.verify() for c in report.certificates)
        assert report.to_dict()["unique_center"] == "1"

    def test_different_centers_give_full_field(self):
        report = classify(polys("x*y", "(x-1)*(y-1)+1"))
        assert report.case is ReductCase.FULL_FIELD
        assert report.reason == "twisted members share no common center"

    def test_mixed_linear_and_twisted(self):
        report = classify(polys("x + y", "x*y"))
        assert report.case is ReductCase.FULL_FIELD
        assert report.reason.startswith("mixed collection")

    def test_unary(self):
        report = classify(polys("x^2", "x^3 + 1"))
        assert report.case is ReductCase.UNARY
        assert report.notes == ()

    def test_unary_precedence_note(self):
        report = classify(polys("(x-1)^2 + 1", "(x-1)^3 + 1"))
        assert report.case is ReductCase.UNARY
        assert report.notes[0].startswith("case_I_precedence")

    def test_constants_only_are_unary(self):
        assert classify(polys("3", "4")).case is ReductCase.UNARY

    def test_empty(self):
        with pytest.raises(EmptyCollectionError):
            classify([])

    def test_evidence_trail(self):
        evidence = classify(polys("x*y", "x + y")).to_dict()["evidence"]
        assert [e["polynomial"] for e in evidence] == ["x + y", "x*y"]
        assert [e["linear"] for e in evidence] == [True, False]
        assert evidence[0]["twist"] is None
        assert evidence[1]["twist"]["rational_roots"] == ["0"]

    def test_report_ignores_member_order(self):
        forward = classify(polys("x^2 + y^2", "x*y^2 + x + 1", "x + y"))
        backward = classify(polys("x + y", "x*y^2 + x + 1", "x^2 + y^2"))
        assert forward.to_dict() == backward.to_dict()


class TestClassifyProperties:
    """Test classification invariants on random collections"""

    def test_single_case_and_permutation_invariance(self):
        rng = random.Random(131)
        cases = set()
        for _ in range(1000):
            ps = [random_member(rng) for _ in range(rng.randint(1, 4))]
            report = classify(ps)
            shuffled = list(ps)
            rng.shuffle(shuffled)
            assert report.case in ReductCase
            assert classify(shuffled).to_dict() == report.to_dict(), [str(p) for p in ps]
            cases.add(report.case)
        assert cases == set(ReductCase)

    def test_linear_with_two_variable_member_is_vector_space(self):
        rng = random.Random(137)
        x, y, z = (MPoly.variable(v) for v in "xyz")
        for _ in range(200):
            ps = [rng.choice([1, 2, -3]) * x + rng.choice([1, -1, 5]) * y + rng.randint(-4, 4)]
            for _ in range(rng.randint(0, 3)):
                a, b, c = (rng.randint(-3, 3) for _ in range(3))
                ps.append(a * x + b * z + c)
            rng.shuffle(ps)
            assert classify(ps).case is ReductCase.VECTOR_SPACE, [str(p) for p in ps]

    def test_strongly_additive_nonlinear_is_full_field(self):
        rng = random.Random(139)
        checked = 0
        while checked < 200:
            f = random_upoly(rng, rng.randint(1, 3), "t")
            u = random_upoly(rng, rng.randint(1, 2), "x")
            if f.degree * u.degree < 2:
                continue
            p = f.compose_mpoly(u.to_mpoly() + u.with_var("y").to_mpoly())
            report = classify([p])
            assert report.case is ReductCase.FULL_FIELD, str(p)
            assert report.field_witness is not None
            checked += 1

    def test_strongly_multiplicative_untwisted_is_full_field(self):
        rng = random.Random(149)
        checked = 0
        while checked < 200:
            f = random_upoly(rng, rng.randint(1, 3), "t")
            u = random_upoly(rng, rng.randint(1, 2), "x")
            p = f.compose_mpoly(u.to_mpoly() * u.with_var("y").to_mpoly())
            if twist_candidates(p) is not None:
                continue
            assert classify([p]).case is ReductCase.FULL_FIELD, str(p)
            checked += 1


class TestInterdefinable:
    """Test interdefinability verdicts"""

    def test_sum_vs_product(self):
        result = interdefinable(polys("x + y"), polys("x*y"))
        assert result.verdict is InterdefVerdict.NO

    def test_inverse_linear_maps(self):
        result = interdefinable(polys("2*x + 1"), polys("1/2*x - 1/2"))
        assert result.verdict is InterdefVerdict.YES
        assert result.diagnostics() == []

    def test_reflected_squares_flag_discrepancy(self):
        result = interdefinable(polys("x^2"), polys("-1*x^2"))
        assert result.verdict is InterdefVerdict.YES
        assert result.diagnostics()[0].startswith("corollary_discrepancy")

    def test_unary_collections_undetermined(self):
        result = interdefinable(polys("x^2", "x^3"), polys("x^2"))
        assert result.verdict is InterdefVerdict.UNDETERMINED_CASE_I

    def test_vector_spaces(self):
        assert interdefinable(polys("x + y"), polys("2*x - y")).verdict is InterdefVerdict.YES

    def test_same_twist_center(self):
        assert interdefinable(polys("x*y"), polys("2*x*y")).verdict is InterdefVerdict.YES

    def test_different_twist_centers(self):
        result = interdefinable(polys("x*y"), polys("(x-1)*(y-1)+1"))
        assert result.verdict is InterdefVerdict.NO
        assert "0 vs 1" in result.explanation

    def test_full_fields(self):
        result = interdefinable(polys("x^2 + y^2"), polys(SHOWCASE))
        assert result.verdict is InterdefVerdict.YES
        assert "defines + and x" in result.explanation
