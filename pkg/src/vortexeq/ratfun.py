"""Rational functions in canonical coprime form, exact integration, and the
Wronskian linear solver that drives every recurrence in the package.

A :class:`RatFun` is a quotient of two :class:`~vortexeq.polynomial.HalfPoly`
values with gcd(num, den) = 1 (half powers included) and a monic denominator.
After reduction at most one of numerator and denominator carries the half-power
parity flag, so canonical forms are unique and equality is structural.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, InconsistentError, NotPolynomialError, NotRationalError
from .exact import ONE, ZERO, GaussianRational
from .polynomial import (
    HalfPoly,
    ZERO_POLY,
    _add,
    _deriv,
    _divexact,
    _divmod,
    _gcd_z,
    _mul,
    _neg,
    _scale,
    _strip,
    from_y,
    one,
    poly,
    poly_gcd,
    to_y,
)


class RatFun:
    """Quotient num/den of half-power polynomials, always in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num: HalfPoly, den: HalfPoly = None):
        if den is None:
            den = one()
        if den.is_zero():
            raise DomainError("zero denominator")
        if num.is_zero():
            num, den = ZERO_POLY, one()
        else:
            g = poly_gcd(num, den)
            if not g.is_one():
                num = num.divexact(g)
                den = den.divexact(g)
            if not den.lc.is_one():
                inv = ONE / den.lc
                num = num.scale(inv)
                den = den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def of(value) -> "RatFun":
        if isinstance(value, RatFun):
            return value
        if isinstance(value, HalfPoly):
            return RatFun(value)
        if isinstance(value, (int, Fraction, GaussianRational)):
            return RatFun(poly([value]))
        raise TypeError(f"cannot build RatFun from {value!r}")

    @staticmethod
    def zero() -> "RatFun":
        return RatFun(ZERO_POLY)

    @staticmethod
    def one() -> "RatFun":
        return RatFun(one())

    # -- queries ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_halfpoly(self) -> HalfPoly:
        if not self.den.is_one():
            raise NotPolynomialError(f"denominator {self.den.to_str()} remains")
        return self.num

    # -- arithmetic ----------------------------------------------------------------

    def __add__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    def __sub__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.den - other.num * self.den,
                      self.den * other.den)

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den)

    def __mul__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFun") -> "RatFun":
        if other.is_zero():
            raise DomainError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def scale(self, s) -> "RatFun":
        return RatFun(self.num.scale(s), self.den)

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return RatFun.one() / self ** (-n)
        out = RatFun.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self) -> "RatFun":
        """Exact d/dz.

        Writing the canonical form as z^(c/2) N(z)/D(z) with c in {-1, 0, 1},
        the derivative is z^(c/2 - 1) ((c/2) N D + z (N'D - N D')) / D^2.
        """
        if self.is_zero():
            return self
        c = self.num.k - self.den.k
        N, D = self.num.coeffs, self.den.coeffs
        delta = _add(_mul(_deriv(N), D), _neg(_mul(N, _deriv(D))))
        d2 = _mul(D, D)
        if c == 0:
            return RatFun(HalfPoly(0, delta), HalfPoly(0, d2))
        bracket = _add(_scale(_mul(N, D), GaussianRational(Fraction(c, 2))),
                       ((ZERO,) + tuple(delta)) if delta else ())
        if c == 1:  # z^(-1/2) * bracket / D^2
            return RatFun(HalfPoly(1, bracket), HalfPoly(0, (ZERO,) + tuple(d2)))
        # c == -1: z^(-3/2) * bracket / D^2
        return RatFun(HalfPoly(1, bracket), HalfPoly(0, (ZERO, ZERO) + tuple(d2)))

    # -- comparison / display ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFun({self.to_str()!r})"

    def to_str(self) -> str:
        if self.den.is_one():
            return self.num.to_str()
        return f"({self.num.to_str()})/({self.den.to_str()})"

    # -- numeric evaluation --------------------------------------------------------------

    def eval_complex(self, w: complex) -> complex:
        import cmath

        nv = self.num.eval_body(complex(w))
        dv = self.den.eval_body(complex(w))
        if self.num.k:
            nv *= cmath.sqrt(w)
        if self.den.k:
            dv *= cmath.sqrt(w)
        return nv / dv


def derivative(h: HalfPoly) -> RatFun:
    """Exact d/dz of a half-power polynomial.

    For parity 0 the result is a polynomial; for parity 1 it is
    (body/2 + z body') / z^(1/2).
    """
    if h.is_zero():
        return RatFun.zero()
    if h.k == 0:
        return RatFun(HalfPoly(0, _deriv(h.coeffs)))
    body = _add(_scale(h.coeffs, GaussianRational(Fraction(1, 2))),
                ((ZERO,) + tuple(_deriv(h.coeffs))) if _deriv(h.coeffs) else ())
    return RatFun(HalfPoly(0, body), HalfPoly(1, (ONE,)))


def log_second_derivative(q: HalfPoly, weight) -> RatFun:
    """weight * (log q)'' computed exactly as weight * d/dz (q'/q)."""
    if q.is_zero():
        raise DomainError("logarithmic derivative of zero")
    logderiv = derivative(q) / RatFun(q)
    return logderiv.derivative().scale(weight)


# -- exact rational primitives ---------------------------------------------------


def rational_primitive(r: RatFun) -> RatFun:
    """Return F with F' = r when F is itself a rational function (of z^(1/2)).

    Works in y = z^(1/2), where dz = 2y dy turns the problem into a classic
    rational-function integral.  The rational part is found by an
    Ostrogradsky-style ansatz solved as an exact linear system; any nonzero
    logarithmic part raises NotRationalError.  The polynomial part of the
    result is normalised to have zero constant term (integration constants
    are always added explicitly by callers).
    """
    if r.is_zero():
        return RatFun.zero()
    A = _mul((ZERO, GaussianRational(2)), to_y(r.num))  # 2y * numerator
    B = to_y(r.den)
    g = _gcd_z(A, B)
    if len(g) > 1:
        A = _divexact(A, g)
        B = _divexact(B, g)
    Q, R = _divmod(A, B)
    # Primitive of the y-polynomial part, zero constant of integration.
    poly_part = [ZERO] * (len(Q) + 1)
    for j, c in enumerate(Q):
        poly_part[j + 1] = c / (j + 1)
    poly_part = _strip(poly_part)
    if not R:
        return RatFun(from_y(poly_part))
    Bm = _gcd_z(B, _deriv(B))
    if len(Bm) == 1:
        raise NotRationalError("simple poles with nonzero residue (log part)")
    C = _solve_ostrogradsky(R, B, Bm)
    num_y = _add(_mul(poly_part, Bm), C)
    return RatFun(from_y(num_y), from_y(Bm))


def _solve_ostrogradsky(R, B, Bm):
    """Solve (C' Bm - C Bm') * (B/Bm) = R * Bm for C with deg C < deg Bm.

    The proper part of the primitive is C/Bm when the system is consistent;
    inconsistency means the integral has a logarithmic term.
    """
    Bs = _divexact(B, Bm)
    n = len(Bm) - 1  # number of unknown coefficients of C
    rhs_poly = _mul(R, Bm)
    # Column images: for C = y^j, (j y^(j-1) Bm - y^j Bm') * Bs.
    Bmd = _deriv(Bm)
    cols = []
    for j in range(n):
        term = []
        if j:
            term = _scale((ZERO,) * (j - 1) + tuple(Bm), GaussianRational(j))
        term = _add(term, _neg((ZERO,) * j + tuple(Bmd)))
        cols.append(_mul(term, Bs))
    rows = max([len(col) for col in cols] + [len(rhs_poly)])
    matrix = [[col[i] if i < len(col) else ZERO for col in cols]
              for i in range(rows)]
    rhs = [rhs_poly[i] if i < len(rhs_poly) else ZERO for i in range(rows)]
    sol = _solve_linear(matrix, rhs)
    if sol is None:
        raise NotRationalError("integral has a logarithmic part")
    return _strip(sol)


def _solve_linear(matrix, rhs):
    """Exact Gaussian elimination for a (possibly overdetermined) system.

    Returns the unique solution, or None when the system is inconsistent.
    Raises DomainError if the system is underdetermined (never the case for
    the integrand shapes produced here).
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    pivots = []
    row = 0
    for col in range(n):
        pivot = None
        for r in range(row, m):
            if not aug[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            raise DomainError("underdetermined linear system")
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = ONE / aug[row][col]
        aug[row] = [v * inv for v in aug[row]]
        for r in range(m):
            if r != row and not aug[r][col].is_zero():
                factor = aug[r][col]
                aug[r] = [v - factor * p for v, p in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    if len(pivots) < n:
        raise DomainError("underdetermined linear system")
    for r in range(row, m):
        if not aug[r][n].is_zero():
            return None
    return [aug[i][n] for i in range(n)]


# -- the Wronskian first-order solver ------------------------------------------------


def abel_solve(f: HalfPoly, W: HalfPoly) -> tuple[HalfPoly, GaussianRational]:
    """Find monic g with g'f - g f' = c W, returning (particular, c).

    The constant c is *induced*: it is the unique scale making a monic
    polynomial solution possible.  The general solution is g + s*f; the
    particular solution returned is canonicalised so that its coefficient of
    z^(deg f) (the free-parameter slot) is zero.

    In y = z^(1/2) the left side is (dg/dy f - g df/dy) / (2y), so this is a
    single triangular linear system in the y-coefficients of g, solved top
    degree first with only divisions by small integers (fraction-free in
    effect).  InconsistentError signals a logarithmic obstruction: the
    recurrence that asked for this step terminates.
    """
    if W.is_zero():
        raise DomainError("abel_solve requires W != 0")
    if f.is_zero() or not f.lc.is_one():
        raise DomainError("abel_solve requires monic f")
    fy = to_y(f)
    wt = _mul((ZERO, GaussianRational(2)), to_y(W))  # 2y * W
    df = len(fy) - 1
    dg = len(wt) - 1 + 1 - df
    if dg <= 0 or dg == df:
        raise InconsistentError("no polynomial solution (degree obstruction)")
    g = [None] * (dg + 1)
    g[dg] = ONE
    if df < dg:
        g[df] = ZERO  # free-parameter slot: the kernel s*f is normalised away
    c = None

    def wt_at(k):
        return wt[k] if k < len(wt) else ZERO

    for k in range(dg + df - 1, -1, -1):
        jstar = k + 1 - df
        acc = ZERO
        lo = max(0, k + 1 - df)
        hi = min(dg, k + 1)
        for j in range(lo, hi + 1):
            if j == jstar and j != df:
                continue
            fi = k - j + 1
            if fi <= df and not fy[fi].is_zero():
                acc = acc + g[j] * fy[fi] * GaussianRational(2 * j - k - 1)
        if jstar == dg:
            # top equation fixes the induced constant
            c = GaussianRational(dg - df) / wt_at(k)
            continue
        rhs = c * wt_at(k)
        if 0 <= jstar < dg and jstar != df:
            g[jstar] = (rhs - acc) / GaussianRational(jstar - df)
        elif acc != rhs:
            # either the pinned-slot equation or a trailing equation failed
            raise InconsistentError("logarithmic obstruction")
    return from_y(g), c


# -- linear differential operators ------------------------------------------------------


class OperatorRep:
    """Differential operator sum(coeffs[j] * d^j/dz^j) with leading coefficient 1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(RatFun.of(c) for c in coeffs)
        if not coeffs or coeffs[-1] != RatFun.one():
            raise DomainError("operator leading coefficient must be exactly 1")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("OperatorRep is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if not isinstance(other, OperatorRep):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"OperatorRep([{', '.join(c.to_str() for c in self.coeffs)}])"


def apply_operator(op, x: RatFun) -> RatFun:
    """Exact sum(coeffs[j] * (d/dz)^j x); accepts OperatorRep or a raw list."""
    coeffs = op.coeffs if isinstance(op, OperatorRep) else [RatFun.of(c) for c in op]
    out = RatFun.zero()
    dx = RatFun.of(x)
    for j, cj in enumerate(coeffs):
        if j:
            dx = dx.derivative()
        if not cj.is_zero():
            out = out + cj * dx
    return out


def compose_operators(a, b) -> OperatorRep:
    """Symbolic composition a after b via Leibniz expansion.

    The leading coefficient of the result is the product of the leading
    coefficients, which is exactly 1 for OperatorRep inputs, so no
    renormalisation scalar arises.
    """
    ca = a.coeffs if isinstance(a, OperatorRep) else [RatFun.of(c) for c in a]
    cb = b.coeffs if isinstance(b, OperatorRep) else [RatFun.of(c) for c in b]
    na, nb = len(ca) - 1, len(cb) - 1
    # b-coefficient derivatives up to the order of a.
    derivs = []
    for bj in cb:
        row = [bj]
        for _ in range(na):
            row.append(row[-1].derivative())
        derivs.append(row)
    out = [RatFun.zero()] * (na + nb + 1)
    binom = [[1]]
    for i in range(1, na + 1):
        binom.append([1] + [binom[-1][kk - 1] + binom[-1][kk] for kk in range(1, i)] + [1])
    for i, ai in enumerate(ca):
        if ai.is_zero():
            continue
        for j in range(nb + 1):
            for m in range(i + 1):
                term = derivs[j][i - m]
                if term.is_zero():
                    continue
                coeff = term if binom[i][m] == 1 else term.scale(binom[i][m])
                out[m + j] = out[m + j] + ai * coeff
    return OperatorRep(out)
