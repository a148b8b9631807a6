"""Dense univariate polynomials over Q(i), with optional half-integer powers.

A :class:`HalfPoly` represents ``z^(k/2) * body(z)`` where ``k`` is 0 or 1 and
``body`` is a dense polynomial with :class:`~vortexeq.exact.GaussianRational`
coefficients in ascending order.  Integer powers arising from products of two
half powers are absorbed into the body, so ``k`` is only the residual parity
and equality is structural.

The zero polynomial is ``k=0`` with an empty coefficient tuple; its degree is
``None`` (a real sentinel, never -1 arithmetic).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .errors import DomainError, NotPolynomialError, ParityError
from .exact import ONE, ZERO, GaussianRational, gauss

Coeffs = tuple[GaussianRational, ...]


def _strip(coeffs) -> Coeffs:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


def _coerce_coeff(c) -> GaussianRational:
    if isinstance(c, GaussianRational):
        return c
    if isinstance(c, (int, Fraction)):
        return GaussianRational(c)
    raise TypeError(f"bad coefficient {c!r}")


# -- raw dense z-polynomial helpers (tuples of GaussianRational) -------------

def _add(a: Coeffs, b: Coeffs) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _strip(out)

def _neg(a: Coeffs) -> Coeffs:
    return tuple(-c for c in a)

def _mul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b):
            if not cb.is_zero():
                out[i + j] = out[i + j] + ca * cb
    return _strip(out)

def _scale(a: Coeffs, s: GaussianRational) -> Coeffs:
    if s.is_zero():
        return ()
    return _strip(c * s for c in a)

def _deriv(a: Coeffs) -> Coeffs:
    return _strip(c * k for k, c in enumerate(a) if k)

def _divmod(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    if not b:
        raise DomainError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    quo = [ZERO] * max(0, len(a) - db)
    while len(rem) - 1 >= db and rem:
        shift = len(rem) - 1 - db
        factor = rem[-1] / lead
        quo[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] = rem[shift + i] - factor * c
        while rem and rem[-1].is_zero():
            rem.pop()
    return _strip(quo), _strip(rem)

def _divexact(a: Coeffs, b: Coeffs) -> Coeffs:
    q, r = _divmod(a, b)
    if r:
        raise DomainError("inexact polynomial division")
    return q


def _gauss_int_gcd(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    """gcd in Z[i] (inputs must be Gaussian integers); any associate is fine."""
    while not b.is_zero():
        # nearest-integer rounding of a/b keeps |remainder| < |b|
        norm = b.re * b.re + b.im * b.im
        qre = (a.re * b.re + a.im * b.im) / norm
        qim = (a.im * b.re - a.re * b.im) / norm
        q = GaussianRational(round(qre), round(qim))
        a, b = b, a - q * b
    return a

def _clear_denominators(coeffs: Coeffs) -> Coeffs:
    lcm = 1
    for c in coeffs:
        for d in (c.re.denominator, c.im.denominator):
            lcm = lcm * d // int_gcd(lcm, d)
    if lcm == 1:
        return coeffs
    m = GaussianRational(lcm)
    return tuple(c * m for c in coeffs)

def _primitive(coeffs: Coeffs) -> Coeffs:
    """Divide out the full Z[i] content (keeps pseudo-remainder chains small)."""
    g = None
    for c in coeffs:
        if c.is_zero():
            continue
        g = c if g is None else _gauss_int_gcd(g, c)
        if g.is_one():
            return coeffs
    if g is None or g.is_one():
        return coeffs
    return tuple(c / g for c in coeffs)

def _pseudo_rem(a: Coeffs, b: Coeffs) -> Coeffs:
    # Fraction-free remainder: multiply by lc(b) instead of dividing, so all
    # intermediates stay Gaussian integers; content is stripped by the caller.
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(rem) - 1 >= db and rem:
        shift = len(rem) - 1 - db
        top = rem[-1]
        rem = [c * lead for c in rem]
        for i, c in enumerate(b):
            rem[shift + i] = rem[shift + i] - top * c
        while rem and rem[-1].is_zero():
            rem.pop()
    return _strip(rem)

# Primes p = 1 (mod 4), so that a square root of -1 exists and Q(i)
# coefficients reduce into GF(p).  Used only for fast *coprimality
# certificates*: gcd = 1 mod p (with nonvanishing leading images) proves
# exact coprimality; anything else falls back to the exact routine.
_MODP_PRIMES = (1000000009, 998244353, 469762049)
_MODP_I = {}


def _sqrt_minus_one(p: int) -> int:
    g = 2
    while pow(g, (p - 1) // 2, p) != p - 1:
        g += 1
    return pow(g, (p - 1) // 4, p)


def _modp_image(coeffs: Coeffs, p: int, imag: int):
    """Coefficients as GF(p) ints, or None when a denominator vanishes mod p."""
    out = []
    for c in coeffs:
        if c.re.denominator % p == 0 or c.im.denominator % p == 0:
            return None
        re = c.re.numerator * pow(c.re.denominator, p - 2, p)
        im = c.im.numerator * pow(c.im.denominator, p - 2, p)
        out.append((re + imag * im) % p)
    return out


def _modp_gcd_degree(a, b, p: int) -> int:
    while b:
        inv = pow(b[-1], p - 2, p)
        db = len(b) - 1
        r = list(a)
        while len(r) - 1 >= db and r:
            factor = r[-1] * inv % p
            shift = len(r) - 1 - db
            for i, c in enumerate(b):
                r[shift + i] = (r[shift + i] - factor * c) % p
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return len(a) - 1


def _certified_coprime(a: Coeffs, b: Coeffs) -> bool:
    """True only when a and b are provably coprime (mod-p certificate)."""
    if not a or not b or len(a) == 1 or len(b) == 1:
        return False
    for p in _MODP_PRIMES:
        if p not in _MODP_I:
            _MODP_I[p] = _sqrt_minus_one(p)
        am = _modp_image(a, p, _MODP_I[p])
        bm = _modp_image(b, p, _MODP_I[p])
        if am is None or bm is None or am[-1] == 0 or bm[-1] == 0:
            continue  # leading image lost; certificate unsound with this prime
        return _modp_gcd_degree(am, bm, p) == 0
    return False


def _gcd_z(a: Coeffs, b: Coeffs) -> Coeffs:
    """Monic gcd over Q(i) via a primitive pseudo-remainder sequence."""
    if not a:
        b = tuple(b)
        return _scale(b, ONE / b[-1]) if b else ()
    if not b:
        a = tuple(a)
        return _scale(a, ONE / a[-1])
    if _certified_coprime(a, b):
        return (ONE,)
    a = _primitive(_clear_denominators(tuple(a)))
    b = _primitive(_clear_denominators(tuple(b)))
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _primitive(_pseudo_rem(a, b))
    return _scale(a, ONE / a[-1])


class HalfPoly:
    """``z^(k/2) * body(z)`` with ``k`` in {0, 1}; immutable."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs):
        coeffs = _strip(_coerce_coeff(c) for c in coeffs)
        if not coeffs:
            k = 0
        elif k not in (0, 1):
            raise ValueError("parity must be 0 or 1")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("HalfPoly is immutable")

    # -- basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        """Degree as a Fraction (half-integers allowed); None for zero."""
        if not self.coeffs:
            return None
        return Fraction(2 * (len(self.coeffs) - 1) + self.k, 2)

    @property
    def lc(self) -> GaussianRational:
        if not self.coeffs:
            return ZERO
        return self.coeffs[-1]

    def coeff_at(self, zpower: int) -> GaussianRational:
        """Body coefficient of z^zpower (the z^(zpower + k/2) term)."""
        if 0 <= zpower < len(self.coeffs):
            return self.coeffs[zpower]
        return ZERO

    def is_one(self) -> bool:
        return self.k == 0 and len(self.coeffs) == 1 and self.coeffs[0].is_one()

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "HalfPoly") -> "HalfPoly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.k != other.k:
            raise ParityError("cannot add half-powers of different parity")
        return HalfPoly(self.k, _add(self.coeffs, other.coeffs))

    def __sub__(self, other: "HalfPoly") -> "HalfPoly":
        return self + (-other)

    def __neg__(self) -> "HalfPoly":
        return HalfPoly(self.k, _neg(self.coeffs))

    def __mul__(self, other: "HalfPoly") -> "HalfPoly":
        if self.is_zero() or other.is_zero():
            return ZERO_POLY
        ksum = self.k + other.k
        body = _mul(self.coeffs, other.coeffs)
        if ksum == 2:  # z^(1/2) * z^(1/2) carries into the body
            body = (ZERO,) + body
            ksum = 0
        return HalfPoly(ksum, body)

    def scale(self, s) -> "HalfPoly":
        return HalfPoly(self.k, _scale(self.coeffs, _coerce_coeff(s)))

    def shift(self, m: int) -> "HalfPoly":
        """Multiply by z^m (m >= 0)."""
        if self.is_zero() or m == 0:
            return self
        return HalfPoly(self.k, (ZERO,) * m + self.coeffs)

    def __pow__(self, n: int) -> "HalfPoly":
        if n < 0:
            raise ValueError("negative power")
        out = one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def monic(self) -> "HalfPoly":
        if self.is_zero():
            return self
        return self.scale(ONE / self.lc)

    # -- structure --------------------------------------------------------------

    def origin_split(self) -> tuple[int, Coeffs]:
        """Return (e, unit) with self = z^(e/2) * unit(z), unit(0) != 0.

        ``e`` counts half-power units: e = 2*m + k where z^m divides the body.
        """
        if self.is_zero():
            return 0, ()
        m = 0
        while self.coeffs[m].is_zero():
            m += 1
        return 2 * m + self.k, self.coeffs[m:]

    def divexact(self, other: "HalfPoly") -> "HalfPoly":
        """Exact division; raises DomainError if not divisible."""
        if other.is_zero():
            raise DomainError("division by zero polynomial")
        if self.is_zero():
            return ZERO_POLY
        eu, u = self.origin_split()
        ev, v = other.origin_split()
        e = eu - ev
        if e < 0:
            raise DomainError("inexact division (origin power)")
        body = _divexact(u, v)
        return HalfPoly(e % 2, ((ZERO,) * (e // 2)) + body)

    # -- evaluation ---------------------------------------------------------------

    def eval_body(self, point):
        """Horner evaluation of the body at a GaussianRational or complex point."""
        acc = ZERO if isinstance(point, GaussianRational) else 0j
        for c in reversed(self.coeffs):
            if isinstance(point, GaussianRational):
                acc = acc * point + c
            else:
                acc = acc * point + complex(c)
        return acc

    # -- comparison / display -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, HalfPoly):
            return NotImplemented
        return self.k == other.k and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.k, self.coeffs))

    def __repr__(self):
        return f"HalfPoly({self.to_str()!r})"

    def to_str(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c.is_zero():
                continue
            if self.k == 0:
                power = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
            else:
                power = "z^(1/2)" if j == 0 else f"z^({2 * j + 1}/2)"
            cs = str(c)
            if power and cs == "1":
                cs = ""
            elif power and cs == "-1":
                cs = "-"
            elif ("+" in cs[1:]) or ("-" in cs[1:]):
                cs = f"({cs})"
            term = f"{cs}{power}" if power else cs
            if parts and not term.startswith("-"):
                parts.append("+")
            parts.append(term)
        return "".join(parts)


ZERO_POLY = HalfPoly(0, ())


def poly(coeffs) -> HalfPoly:
    """Integer-power polynomial from ascending coefficients."""
    return HalfPoly(0, coeffs)


def half(coeffs) -> HalfPoly:
    """z^(1/2) * body from ascending body coefficients."""
    return HalfPoly(1, coeffs)


def one() -> HalfPoly:
    return HalfPoly(0, (ONE,))


def z_power(n: int, coeff=1) -> HalfPoly:
    return HalfPoly(0, (ZERO,) * n + (_coerce_coeff(coeff),))


Z = z_power(1)
SQRT_Z = HalfPoly(1, (ONE,))


def from_strings(k: int, coeffs: list[str]) -> HalfPoly:
    from .exact import parse_gaussian

    return HalfPoly(k, [parse_gaussian(c) for c in coeffs])


# -- y-space (y = z^(1/2)) conversions -------------------------------------------
#
# Several algorithms (Wronskian linear systems, rational primitives) become
# ordinary polynomial algebra in y = z^(1/2); a HalfPoly is exactly a parity-
# pure dense polynomial in y.


def to_y(h: HalfPoly) -> Coeffs:
    """Dense coefficients in y = z^(1/2): y-degree 2*j + k for body index j."""
    if h.is_zero():
        return ()
    out = [ZERO] * (2 * len(h.coeffs) - 1 + h.k)
    for j, c in enumerate(h.coeffs):
        out[2 * j + h.k] = c
    return tuple(out)


def from_y(ycoeffs) -> HalfPoly:
    """Inverse of :func:`to_y`; raises NotPolynomialError on mixed parity."""
    ycoeffs = _strip(_coerce_coeff(c) for c in ycoeffs)
    if not ycoeffs:
        return ZERO_POLY
    k = (len(ycoeffs) - 1) % 2
    for idx, c in enumerate(ycoeffs):
        if idx % 2 != k and not c.is_zero():
            raise NotPolynomialError("mixed half-integer and integer powers")
    return HalfPoly(k, ycoeffs[k::2])


# -- gcd / squarefree ----------------------------------------------------------


def poly_gcd(f: HalfPoly, g: HalfPoly) -> HalfPoly:
    """Monic gcd in the half-power sense: common z^(e/2) factor times body gcd."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    ef, u = f.origin_split()
    eg, v = g.origin_split()
    e = min(ef, eg)
    body = _gcd_z(u, v)
    return HalfPoly(e % 2, ((ZERO,) * (e // 2)) + body)


def is_squarefree(f: HalfPoly) -> bool:
    """True when the body of f has no repeated roots (gcd with derivative is 1)."""
    if f.is_zero():
        return False
    return len(_gcd_z(f.coeffs, _deriv(f.coeffs))) == 1


def gcd_and_squarefree(a: HalfPoly, b: HalfPoly) -> tuple[HalfPoly, bool, bool]:
    """Monic gcd plus squarefree flags for both arguments."""
    if a.is_zero() or b.is_zero():
        raise DomainError("gcd_and_squarefree requires nonzero polynomials")
    return poly_gcd(a, b), is_squarefree(a), is_squarefree(b)


# -- Wronskian -------------------------------------------------------------------


def wronskian(f: HalfPoly, g: HalfPoly) -> HalfPoly:
    """Exact f'g - fg' as a HalfPoly.

    With f = z^(a/2) F and g = z^(b/2) G this is
    z^((a+b)/2 - 1) * ((a-b)/2 * F*G + z*(F'G - FG')); when the parities
    differ the bracket must be divisible by z, otherwise the result has a
    residual fractional negative power and NotPolynomialError is raised.
    """
    if f.is_zero() or g.is_zero():
        return ZERO_POLY
    F, G = f.coeffs, g.coeffs
    delta = _add(_mul(_deriv(F), G), _neg(_mul(F, _deriv(G))))
    if f.k == g.k:
        body = delta if f.k == 0 else ((ZERO,) + tuple(delta) if delta else ())
        return HalfPoly(0, body)
    s = 1 if f.k else -1  # sign of (a - b)
    prod = _mul(F, G)
    bracket = list(_add(_scale(prod, GaussianRational(Fraction(s, 2))),
                        ((ZERO,) + tuple(delta)) if delta else ()))
    if not bracket:
        return ZERO_POLY
    if not bracket[0].is_zero():
        raise NotPolynomialError("Wronskian has a residual z^(-1/2) term")
    return HalfPoly(1, bracket[1:])
