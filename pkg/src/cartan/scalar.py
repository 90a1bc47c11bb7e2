"""Scalar fields: exact rationals by default, tolerance-bearing floats on request.

Exact values are GMP rationals (``gmpy2.mpq``); they compare equal to
:class:`fractions.Fraction` and ``int`` so callers may mix them freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from gmpy2 import mpq

Number = Union[mpq, Fraction, float, int]
Rat = type(mpq(0))

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Field:
    """Arithmetic mode shared by every zero test in the package.

    ``exact=True`` keeps values as ``mpq`` rationals and compares
    with ``== 0``. Float mode coerces to ``float`` and treats anything with
    ``|x| <= tol`` as zero.
    """

    exact: bool = True
    tol: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if not self.exact and not self.tol > 0:
            raise ValueError(f"float mode needs a positive tolerance, got {self.tol!r}")

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "float"

    def coerce(self, value) -> Number:
        if self.exact:
            if isinstance(value, float):
                raise TypeError(f"float {value!r} in exact mode; pass a rational string or Fraction")
            return mpq(value)
        return float(value)

    def is_zero(self, value) -> bool:
        if self.exact:
            return value == 0
        return abs(value) <= self.tol

    def eq(self, a, b) -> bool:
        return self.is_zero(a - b)

    def sign(self, value) -> int:
        if self.is_zero(value):
            return 0
        return 1 if value > 0 else -1


EXACT = Field()


def float_field(tol: float = DEFAULT_TOLERANCE) -> Field:
    return Field(exact=False, tol=tol)


def parse_scalar(text, field: Field = EXACT) -> Number:
    """Parse ``"a/b"``, an integer, or (float mode only) a decimal."""
    if isinstance(text, bool):
        raise ValueError(f"not a number: {text!r}")
    if isinstance(text, (int, Rational)):
        return field.coerce(text)
    if isinstance(text, float):
        if field.exact:
            raise ValueError(f"bare float {text!r} in exact mode; write it as a rational string")
        return text
    if not isinstance(text, str):
        raise ValueError(f"not a number: {text!r}")
    s = text.strip()
    if field.exact:
        num, _, den = s.partition("/")
        try:
            n = int(num)
            d = int(den) if den else 1
        except ValueError:
            raise ValueError(f"malformed rational {text!r}") from None
        if d == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return mpq(n, d)
    try:
        return float(Fraction(s))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed number {text!r}") from None


def format_scalar(value: Number) -> str:
    if isinstance(value, (Rat, Fraction, int)):
        return str(value)
    return repr(float(value))
