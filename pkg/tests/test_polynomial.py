import random
from fractions import Fraction

import pytest

from vortexeq.errors import DomainError, NotPolynomialError, ParityError
from vortexeq.exact import GaussianRational, gauss
from vortexeq.polynomial import (
    SQRT_Z,
    Z,
    HalfPoly,
    from_y,
    gcd_and_squarefree,
    half,
    is_squarefree,
    one,
    poly,
    poly_gcd,
    to_y,
    wronskian,
    z_power,
)
from vortexeq.ratfun import derivative


def test_parity_carry():
    assert SQRT_Z * SQRT_Z == Z


def test_cancellation():
    a = poly([1, 0, 0, 1])  # z^3 + 1
    b = poly([0, 0, 0, -1])
    assert a + b == one()


def test_half_power_product():
    # z^(1/2) * (z^4 + 3) = z^(9/2) + 3 z^(1/2)
    t2 = gauss(3)
    p = SQRT_Z * poly([t2, 0, 0, 0, 1])
    assert p == half([3, 0, 0, 0, 1])
    assert p.degree == Fraction(9, 2)


def test_parity_mismatch_add():
    with pytest.raises(ParityError):
        poly([1]) + half([1])


def test_degree_sentinel():
    zero = poly([])
    assert zero.is_zero()
    assert zero.degree is None
    assert poly([5]).degree == 0
    assert half([1]).degree == Fraction(1, 2)


def test_derivative_simple():
    # d/dz (z^3 + 1) = 3z^2
    d = derivative(poly([1, 0, 0, 1]))
    assert d.is_polynomial()
    assert d.as_halfpoly() == poly([0, 0, 3])


def test_derivative_sqrt():
    # d/dz z^(1/2) = (1/2) z^(-1/2)
    d = derivative(SQRT_Z)
    assert d.num == poly([Fraction(1, 2)])
    assert d.den == SQRT_Z


def test_derivative_paper_member():
    # d/dz (z^5 + s2 z - 4 t1) with s2 = 1+5i, t1 = 1
    s2 = gauss(1, 5)
    q2 = poly([gauss(-4), s2, 0, 0, 0, 1])
    d = derivative(q2)
    assert d.as_halfpoly() == poly([s2, 0, 0, 0, 5])


def _random_half(rng, max_deg=4):
    k = rng.choice([0, 1])
    coeffs = [
        GaussianRational(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                         Fraction(rng.randint(-2, 2)))
        for _ in range(rng.randint(1, max_deg + 1))
    ]
    return HalfPoly(k, coeffs)


def test_leibniz_random():
    from vortexeq.ratfun import RatFun

    rng = random.Random(5150)
    for _ in range(40):
        a, b = _random_half(rng), _random_half(rng)
        lhs = derivative(a * b)
        rhs = derivative(a) * RatFun(b) + RatFun(a) * derivative(b)
        assert lhs == rhs


def test_gcd_power():
    g, sa, sb = gcd_and_squarefree(z_power(2), z_power(3))
    assert g == z_power(2)
    assert (sa, sb) == (False, False)


def test_gcd_coprime():
    g, sa, sb = gcd_and_squarefree(poly([1, 0, 0, 1]), Z)
    assert g == one()
    assert (sa, sb) == (True, True)


def test_gcd_generated_pair():
    # q2 and p1 at t1 = 1, s2 = 1+5i are coprime and squarefree
    q2 = poly([gauss(-4), gauss(1, 5), 0, 0, 0, 1])
    p1 = poly([1, 0, 0, 0, 0, 1])
    g, sa, sb = gcd_and_squarefree(q2, p1)
    assert g == one()
    assert sa and sb


def test_gcd_half_power():
    # gcd(z^(1/2), z) = z^(1/2)
    assert poly_gcd(SQRT_Z, Z) == SQRT_Z
    # gcd(z^(1/2)(z+1), z(z+1)(z+2)) = z^(1/2)(z+1)
    f = SQRT_Z * poly([1, 1])
    g = Z * poly([1, 1]) * poly([2, 1])
    assert poly_gcd(f, g) == f


def test_gcd_random_products():
    rng = random.Random(99)
    for _ in range(25):
        a, b, c = (_random_half(rng, 3) for _ in range(3))
        if a.is_zero() or b.is_zero() or c.is_zero():
            continue
        g = poly_gcd(a * c, b * c)
        # common factor c must divide the gcd
        assert (a * c).divexact(g) is not None
        q = g.divexact(c.monic()) if _divides(c.monic(), g) else None
        assert q is not None


def _divides(d, f):
    try:
        f.divexact(d)
        return True
    except DomainError:
        return False


def test_squarefree_flag():
    assert is_squarefree(poly([1, 0, 0, 1]))
    assert not is_squarefree(poly([1, 2, 1]))  # (z+1)^2


def test_wronskian_recurrence_member():
    # f = q2 (t1=1, s2=0), g = q1 = z: f'g - fg' = 4(z^5 + 1)
    f = poly([-4, 0, 0, 0, 0, 1])
    w = wronskian(f, Z)
    assert w == poly([4, 0, 0, 0, 0, 4])


def test_wronskian_dependent():
    f = poly([1, 2, 3])
    assert wronskian(f, f).is_zero()


def test_wronskian_consecutive():
    # f = P3 (s1=1, any s2), g = P1 = z: result 5 (z^3+1)^2, independent of s2
    s2 = gauss(2, -7)
    p3 = poly([-5, s2, 0, 5, 0, 0, 1])
    w = wronskian(p3, Z)
    assert w == (poly([1, 0, 0, 1]) ** 2).scale(5)


def test_wronskian_antisymmetric_and_degree():
    rng = random.Random(31)
    for _ in range(40):
        f, g = _random_half(rng), _random_half(rng)
        try:
            w = wronskian(f, g)
        except NotPolynomialError:
            # mixed parity with non-cancelling z^(-1/2) term
            continue
        assert w == -wronskian(g, f)
        if f.is_zero() or g.is_zero() or f.degree == g.degree:
            continue
        assert w.degree == f.degree + g.degree - 1
        assert w.lc == (f.degree - g.degree) * f.lc * g.lc


def test_wronskian_degree_law_exact():
    f = poly([1, 0, 0, 2])   # deg 3, lc 2
    g = poly([5, 7])         # deg 1, lc 7
    w = wronskian(f, g)
    assert w.degree == 3
    assert w.lc == gauss(Fraction(2)) * gauss(7) * 2  # (3-1) * lc f * lc g


def test_wronskian_mixed_parity_obstruction():
    # f = z^(1/2), g = 1 + z: bracket has nonzero constant term
    with pytest.raises(NotPolynomialError):
        wronskian(SQRT_Z, poly([1, 1]))
    # f = z^(1/2), g = z: fine: (1/2 - 1) z^(1/2) = -(1/2) z^(1/2)
    w = wronskian(SQRT_Z, Z)
    assert w == half([Fraction(-1, 2)])


def test_y_roundtrip():
    rng = random.Random(8)
    for _ in range(30):
        h = _random_half(rng)
        assert from_y(to_y(h)) == h
    with pytest.raises(NotPolynomialError):
        from_y([gauss(1), gauss(1)])  # 1 + z^(1/2) is not parity pure


def test_divexact():
    a = poly([1, 0, 0, 1]) * poly([2, 1]) * SQRT_Z
    assert a.divexact(poly([2, 1])) == poly([1, 0, 0, 1]) * SQRT_Z
    with pytest.raises(DomainError):
        a.divexact(poly([3, 1]))
