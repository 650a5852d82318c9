"""Exact rational scalars and their wire format.

The scalar type throughout the package is :class:`fractions.Fraction`, which
already guarantees the canonical form we rely on (positive denominator,
reduced to lowest terms, zero as 0/1).  This module adds the text format used
by every JSON payload: optional leading '-', an integer, and an optional
'/positive-integer' part, always in lowest terms.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import SchemaError

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse the wire format into a Fraction.

    Rejects anything outside ``-?digits(/digits)?`` (no whitespace, no
    floats, no '+' sign, denominator positive and nonzero).
    """
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise SchemaError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    """Render a Fraction in the wire format (lowest terms, '-3/7' style)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def coerce_rational(value) -> Fraction:
    """Accept Fraction/int/rational-string inputs from user-facing layers."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise SchemaError(f"cannot interpret {value!r} as a rational")
