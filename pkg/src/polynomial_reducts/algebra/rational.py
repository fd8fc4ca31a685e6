"""
Scalar field for every coefficient in the package.

The coefficient field is exact QQ. Everything else in ``algebra`` reaches scalars through
this module only, so swapping in a larger exact field means touching one place.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rat = Fraction

RatLike = Union[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)

_RAT_PATTERN = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def as_rat(value: RatLike) -> Fraction:
    """Coerce an int or Fraction to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


def render_rat(value: Fraction) -> str:
    """Lowest-terms text: "p" for integers, "p/q" otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rat(text: str) -> Fraction:
    """Inverse of render_rat."""
    match = _RAT_PATTERN.match(text.strip())
    if not match:
        raise ValueError(f"not a rational literal: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) else 1
    if denominator == 0:
        raise ValueError("zero denominator")
    return Fraction(numerator, denominator)
