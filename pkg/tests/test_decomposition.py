#!/usr/bin/env python3
"""
Tests for additive / multiplicative decompositions and their strong forms.
"""

import random
from fractions import Fraction

import pytest

from polynomial_reducts.algebra.mpoly import MPoly
from polynomial_reducts.algebra.upoly import UPoly
from polynomial_reducts.constants import ERTag
from polynomial_reducts.decomposition import (
    AdditiveDecomp,
    ERVerdict,
    constant_lines,
    er_classify,
    weak_additive,
    weak_multiplicative,
)
from polynomial_reducts.exceptions import ConsistencyError, ShapeError
from polynomial_reducts.parser import parse_poly


def random_upoly(rng: random.Random, degree: int, var: str) -> UPoly:
    coeffs = [rng.randint(-3, 3) for _ in range(degree)]
    return UPoly.of(coeffs + [rng.choice([-2, -1, 1, 2])], var)


def random_bivariate(rng: random.Random, max_degree: int) -> MPoly:
    """A handful of random x^i*y^j terms with i + j <= max_degree."""
    x, y = MPoly.variable("x"), MPoly.variable("y")
    p = MPoly.constant(rng.randint(-3, 3))
    for _ in range(rng.randint(2, 5)):
        i = rng.randint(0, max_degree)
        j = rng.randint(0, max_degree - i)
        p = p + rng.choice([-2, -1, 1, 2]) * x**i * y**j
    return p


def planted_additive(rng: random.Random, max_degree: int = 4) -> MPoly:
    f = random_upoly(rng, rng.randint(1, max_degree), "t")
    u = random_upoly(rng, rng.randint(1, max_degree), "x")
    v = random_upoly(rng, rng.randint(1, max_degree), "y")
    return f.compose_mpoly(u.to_mpoly() + v.to_mpoly())


def planted_multiplicative(rng: random.Random, max_degree: int = 4) -> MPoly:
    f = random_upoly(rng, rng.randint(1, max_degree), "t")
    u = random_upoly(rng, rng.randint(1, max_degree), "x")
    v = random_upoly(rng, rng.randint(1, max_degree), "y")
    return f.compose_mpoly(u.to_mpoly() * v.to_mpoly())


class TestWeakDetectors:
    """Test the weak additive and multiplicative detectors"""

    def test_sum_of_squares_is_additive(self):
        dec = weak_additive(parse_poly("x^2 + y^2"))
        assert dec is not None
        assert dec.u == UPoly.of([0, 0, 1], "x")
        assert dec.v == UPoly.of([0, 0, 1], "y")
        assert dec.f.coeffs == (0, 1)

    def test_additive_normalization(self):
        dec = weak_additive(parse_poly("(3*x + 2*y^2 + 1)^2"))
        assert dec is not None
        assert dec.u.is_monic()
        assert dec.u.coeff(0) == 0 and dec.v.coeff(0) == 0
        assert dec.expand() == parse_poly("(3*x + 2*y^2 + 1)^2")

    def test_product_is_not_additive(self):
        assert weak_additive(parse_poly("x*y")) is None

    def test_product_is_multiplicative(self):
        dec = weak_multiplicative(parse_poly("x*y"))
        assert dec is not None
        assert dec.u == UPoly.of([0, 1], "x")
        assert dec.v == UPoly.of([0, 1], "y")
        assert dec.f.coeffs == (0, 1)

    def test_sum_is_not_multiplicative(self):
        assert weak_multiplicative(parse_poly("x + y")) is None
        assert weak_multiplicative(parse_poly("x^2 + y^2")) is None

    def test_mixed_degrees_multiplicative(self):
        p = parse_poly("x^2*y + x^2")
        dec = weak_multiplicative(p)
        assert dec is not None
        assert dec.u.degree == 2 and dec.v.degree == 1
        assert dec.expand() == p

    def test_needs_two_variables(self):
        with pytest.raises(ShapeError):
            weak_additive(parse_poly("x^2 + 1"))
        with pytest.raises(ShapeError):
            weak_multiplicative(parse_poly("x*y*z"))

    def test_planted_additive_recovered(self):
        rng = random.Random(41)
        for _ in range(300):
            p = planted_additive(rng)
            dec = weak_additive(p)
            assert dec is not None, str(p)
            assert dec.expand() == p
            assert weak_multiplicative(p) is None

    def test_planted_multiplicative_recovered(self):
        rng = random.Random(43)
        for _ in range(300):
            p = planted_multiplicative(rng)
            dec = weak_multiplicative(p)
            assert dec is not None, str(p)
            assert dec.expand() == p
            assert dec.u.is_monic() and dec.v.is_monic()
            assert weak_additive(p) is None

    def test_detectors_are_exclusive(self):
        rng = random.Random(47)
        checked = 0
        for _ in range(1000):
            p = random_bivariate(rng, 6)
            if p.support_vars() != frozenset({"x", "y"}):
                continue
            checked += 1
            assert not (weak_additive(p) and weak_multiplicative(p)), str(p)
        assert checked > 500


class TestConstantLines:
    """Test lines on which a polynomial is constant"""

    def test_product_vanishes_on_axes(self):
        assert constant_lines(parse_poly("x*y"), "x") == (Fraction(0),)
        assert constant_lines(parse_poly("x*y"), "y") == (Fraction(0),)

    def test_shifted_factor(self):
        assert constant_lines(parse_poly("x^2*y + x^2"), "y") == (Fraction(-1),)

    def test_no_constant_line(self):
        assert constant_lines(parse_poly("x^2 + y^2"), "x") == ()

    def test_independent_of_other_variable(self):
        assert constant_lines(parse_poly("x^2 + 1"), "x") is None

    def test_attached_to_certificate(self):
        dec = weak_multiplicative(parse_poly("x^2*y + x^2"))
        assert dec is not None
        assert dec.to_dict()["constant_lines_y"] == ["-1"]


class TestERClassify:
    """Test the three-way verdict with strong forms"""

    def test_sum_of_squares_strongly_additive(self):
        verdict = er_classify(parse_poly("x^2 + y^2"))
        assert verdict.tag is ERTag.ADDITIVE
        assert verdict.is_strong
        strong = verdict.to_dict()["certificate"]["strong"]
        assert strong == {"u_common": "t^2", "c1": "1", "c2": "1", "f_adjusted": "t"}

    def test_linear_sum_strongly_additive(self):
        verdict = er_classify(parse_poly("x + y"))
        assert verdict.tag is ERTag.ADDITIVE
        assert verdict.is_strong

    def test_weak_only_additive(self):
        verdict = er_classify(parse_poly("x^2 + y"))
        assert verdict.tag is ERTag.ADDITIVE
        assert not verdict.is_strong
        assert verdict.to_dict()["strong"] is False

    def test_product_strongly_multiplicative(self):
        verdict = er_classify(parse_poly("x*y"))
        assert verdict.tag is ERTag.MULTIPLICATIVE
        assert verdict.to_dict()["certificate"]["strong"] == {
            "u0": "t", "m": 1, "n": 1, "f_adjusted": "t",
        }

    def test_unequal_powers_of_common_base(self):
        verdict = er_classify(parse_poly("x^2*y^4 + 1"))
        assert verdict.tag is ERTag.MULTIPLICATIVE
        strong = verdict.certificate.strong
        assert strong is not None
        assert (strong.m, strong.n) == (1, 2)
        assert str(strong.f_adjusted) == "t^2 + 1"
        assert strong.expand("x", "y") == parse_poly("x^2*y^4 + 1")

    def test_weak_only_multiplicative(self):
        verdict = er_classify(parse_poly("x^2*y + x^2"))
        assert verdict.tag is ERTag.MULTIPLICATIVE
        assert not verdict.is_strong

    def test_showcase_is_neither(self):
        verdict = er_classify(parse_poly("x^17 + x^6*y^8 - y^3"))
        assert verdict.tag is ERTag.NEITHER
        assert verdict.certificate is None

    def test_variable_names_follow_polynomial(self):
        verdict = er_classify(parse_poly("a*b"))
        assert verdict.variables == ("a", "b")
        assert verdict.to_dict()["variables"] == ["a", "b"]

    def test_strong_forms_re_expand(self):
        rng = random.Random(47)
        for _ in range(20):
            p = planted_additive(rng)
            verdict = er_classify(p)
            assert verdict.tag is ERTag.ADDITIVE
            if verdict.certificate.strong is not None:
                assert verdict.certificate.strong.expand("x", "y") == p

    def test_tag_certificate_mismatch(self):
        dec = weak_additive(parse_poly("x + y"))
        assert isinstance(dec, AdditiveDecomp)
        with pytest.raises(ConsistencyError):
            ERVerdict(ERTag.NEITHER, dec, ("x", "y"))
        with pytest.raises(ConsistencyError):
            ERVerdict(ERTag.MULTIPLICATIVE, dec, ("x", "y"))
