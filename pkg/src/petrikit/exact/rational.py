"""Exact rational scalars and their wire format ("num/den" strings)."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or ``"num"``; floats and decimals are rejected."""
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    body = s.lstrip("+-")
    parts = body.split("/")
    if len(parts) > 2 or not all(p.isdigit() for p in parts):
        raise ValueError(f"not an exact rational string: {text!r}")
    if len(parts) == 2 and int(parts[1]) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(s)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
