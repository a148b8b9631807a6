"""Exact coefficient field: rationals and Gaussian rationals.

Rationals are plain ``fractions.Fraction`` (arbitrary precision, always in
lowest terms with a positive denominator, so equality is structural).
``GaussianRational`` adds the imaginary unit on top: a pair of Fractions with
exact component-wise arithmetic.  No floats appear in this module; conversion
to machine numbers happens only in :mod:`vortexeq.numerics`.

The text encoding used in JSON files and on the command line is
``"a/b+c/di"``: no whitespace, an ``i`` suffix marks the imaginary part,
omitted parts default to 0 and omitted denominators to 1.  Examples:
``"2"``, ``"-5/3"``, ``"1+5i"``, ``"2/3-4/5i"``, ``"i"``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DomainError

# The rational scalar type used everywhere.
Rational = Fraction

_TERM_RE = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class GaussianRational:
    """An element of Q(i): exact complex number with rational components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if not norm:
            raise DomainError("division by zero")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise TypeError("only non-negative integer powers")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    # -- conversion ----------------------------------------------------------

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_gaussian(self)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gauss(re=0, im=0) -> GaussianRational:
    """Shorthand constructor accepting ints, Fractions, or 'a/b' strings."""
    if isinstance(re, str):
        re = Fraction(re)
    if isinstance(im, str):
        im = Fraction(im)
    return GaussianRational(re, im)


def field_arithmetic(a: GaussianRational, b: GaussianRational, op: str) -> GaussianRational:
    """Dispatch-style field operation; ``op`` is one of add/sub/mul/div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def parse_gaussian(text: str) -> GaussianRational:
    """Parse the exact ``a/b+c/di`` encoding.

    Raises ValueError on malformed input (whitespace is not tolerated).
    """
    s = text
    if not s or s != s.strip() or " " in s:
        raise ValueError(f"malformed exact number {text!r}")
    # Split into at most two signed terms; signs after position 0 separate terms.
    terms = []
    start = 0
    for idx in range(1, len(s)):
        if s[idx] in "+-" and s[idx - 1] not in "+-/":
            terms.append(s[start:idx])
            start = idx
    terms.append(s[start:])
    if not 1 <= len(terms) <= 2:
        raise ValueError(f"malformed exact number {text!r}")
    re_part = Fraction(0)
    im_part = Fraction(0)
    seen_re = seen_im = False
    for term in terms:
        imaginary = term.endswith("i")
        if imaginary:
            term = term[:-1]
            if term in ("", "+"):
                term = "1"
            elif term == "-":
                term = "-1"
        value = _parse_fraction_term(term, text)
        if imaginary:
            if seen_im:
                raise ValueError(f"malformed exact number {text!r}")
            im_part, seen_im = value, True
        else:
            if seen_re:
                raise ValueError(f"malformed exact number {text!r}")
            re_part, seen_re = value, True
    return GaussianRational(re_part, im_part)


def _parse_fraction_term(term: str, original: str) -> Fraction:
    m = _TERM_RE.match(term)
    if not m:
        raise ValueError(f"malformed exact number {original!r}")
    sign, num, den = m.groups()
    value = Fraction(int(num), int(den) if den else 1)
    return -value if sign == "-" else value


def _format_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_gaussian(value: GaussianRational) -> str:
    """Inverse of :func:`parse_gaussian`; canonical minimal form."""
    if value.is_zero():
        return "0"
    parts = []
    if value.re:
        parts.append(_format_fraction(value.re))
    if value.im:
        im = _format_fraction(value.im)
        if parts and not im.startswith("-"):
            parts.append("+")
        parts.append(im + "i")
    return "".join(parts)
