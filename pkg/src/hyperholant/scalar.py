"""Exact Gaussian-rational scalars.

Every value the toolkit produces (Holant values, fingerprints, expansion
coefficients) is an :class:`ExactScalar`: a complex number whose real and
imaginary parts are :class:`fractions.Fraction`.  Zero-testing is exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class ScalarError(ValueError):
    """Raised for undefined exact operations (division by zero, bad literals)."""


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` / ``"p"`` strings or integers; floats are rejected."""
    if isinstance(text, bool):
        raise ScalarError(f"booleans are not scalars: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ScalarError(f"expected an exact rational literal, got {type(text).__name__} {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ScalarError(f"not an exact rational literal (use 'p/q'): {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ScalarError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class ExactScalar:
    """Complex number with exact rational parts. Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "ExactScalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, value) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, bool):
            raise ScalarError("booleans are not scalars")
        if isinstance(value, (int, Fraction, Rational)):
            return cls._raw(Fraction(value), _ZERO_Q)
        if isinstance(value, str):
            return cls._raw(parse_rational(value), _ZERO_Q)
        if isinstance(value, dict):
            return cls._raw(parse_rational(value.get("re", 0)), parse_rational(value.get("im", 0)))
        if isinstance(value, complex) or isinstance(value, float):
            raise ScalarError(f"floating-point values are not exact: {value!r}")
        raise ScalarError(f"cannot interpret {value!r} as an exact scalar")

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except ScalarError:
            return NotImplemented
        return ExactScalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except ScalarError:
            return NotImplemented
        return ExactScalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return ExactScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except ScalarError:
            return NotImplemented
        if not self.im and not o.im:
            return ExactScalar._raw(self.re * o.re, _ZERO_Q)
        return ExactScalar._raw(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by exact zero")
        if not self.im:
            return ExactScalar._raw(1 / self.re, _ZERO_Q)
        norm = self.re * self.re + self.im * self.im
        return ExactScalar._raw(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except ScalarError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int) or isinstance(k, bool):
            return NotImplemented
        if k < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of exact zero")
            return self.inverse() ** (-k)
        if not self.im:
            return ExactScalar._raw(self.re**k, _ZERO_Q)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "ExactScalar":
        return ExactScalar._raw(self.re, -self.im)

    # comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    # conversions -------------------------------------------------------
    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_json(self):
        if not self.im:
            return format_rational(self.re)
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        return f"{format_rational(self.re)}{'+' if self.im >= 0 else '-'}{format_rational(abs(self.im))}i"

    def __repr__(self):
        return f"ExactScalar({self})"


Scalarish = Union[ExactScalar, int, Fraction, str]

_ZERO_Q = Fraction(0)
ZERO = ExactScalar._raw(Fraction(0), Fraction(0))
ONE = ExactScalar._raw(Fraction(1), Fraction(0))
I = ExactScalar._raw(Fraction(0), Fraction(1))


def S(value) -> ExactScalar:
    """Shorthand coercion used throughout the package and tests."""
    return ExactScalar.coerce(value)


def scalar_ops(a, b, op: str, k: int | None = None):
    """Dispatch one exact operation by name: add, sub, mul, div, pow, is_zero."""
    a = S(a)
    if op == "is_zero":
        return a.is_zero()
    if op == "pow":
        if k is None:
            raise ScalarError("pow needs an exponent k")
        return a**k
    b = S(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ScalarError(f"unknown scalar op {op!r}")
