import random
from fractions import Fraction

import pytest

from vortexeq.errors import DomainError, InconsistentError, NotRationalError
from vortexeq.exact import GaussianRational, gauss
from vortexeq.polynomial import SQRT_Z, Z, HalfPoly, half, one, poly, z_power
from vortexeq.ratfun import (
    OperatorRep,
    RatFun,
    abel_solve,
    apply_operator,
    compose_operators,
    derivative,
    log_second_derivative,
    rational_primitive,
)


def rf(num, den=None):
    return RatFun(num) if den is None else RatFun(num, den)


class TestCanonicalForm:
    def test_reduction(self):
        r = RatFun(poly([1, 0, 0, 1]) * poly([0, 2]), Z * poly([2, 2]))
        # (z^3+1) 2z / (2 z (1+z)) = (z^2 - z + 1)
        assert r == RatFun(poly([1, -1, 1]))

    def test_half_parity_cancel(self):
        r = RatFun(SQRT_Z * poly([1, 1]), SQRT_Z * poly([2, 1]))
        assert r.num == poly([1, 1]) and r.den == poly([2, 1])

    def test_monic_denominator(self):
        r = RatFun(poly([1]), poly([0, 3]))
        assert r.den == Z and r.num == poly([Fraction(1, 3)])

    def test_zero_denominator(self):
        with pytest.raises(DomainError):
            RatFun(one(), poly([]))


class TestLogSecondDerivative:
    def test_constant(self):
        assert log_second_derivative(one(), Fraction(-2)).is_zero()

    def test_log_z(self):
        # -6 (log z)'' = 6/z^2
        r = log_second_derivative(Z, Fraction(-6))
        assert r == rf(poly([6]), z_power(2))

    def test_cubic_hand_check(self):
        # -2 (log(z^3+1))'' = -2 (6z(z^3+1) - 9z^4) / (z^3+1)^2
        q = poly([1, 0, 0, 1])
        r = log_second_derivative(q, Fraction(-2))
        num = (poly([0, 6]) * q - poly([0, 0, 0, 0, 9])).scale(-2)
        assert r == rf(num, q * q)

    def test_finite_difference_cross_check(self):
        import math

        q = poly([1, 0, 0, 1])
        r = log_second_derivative(q, Fraction(-2))
        h = 1e-5
        z0 = 2.0
        logq = lambda t: math.log(abs(t**3 + 1))
        fd = -2 * (logq(z0 + h) - 2 * logq(z0) + logq(z0 - h)) / h**2
        assert abs(r.eval_complex(z0).real - fd) < 1e-5


class TestRationalPrimitive:
    def test_monomial(self):
        F = rational_primitive(rf(z_power(2)))
        assert F == rf(z_power(3).scale(Fraction(1, 3)))

    def test_log_obstruction(self):
        with pytest.raises(NotRationalError):
            rational_primitive(rf(one(), Z))

    def test_hermite_style_reduction(self):
        # int (z^3+1)^2 / z^2 dz = z^5/5 + z^2 - 1/z
        r = rf(poly([1, 0, 0, 1]) ** 2, z_power(2))
        F = rational_primitive(r)
        expected = rf(poly([-5, 0, 0, 5, 0, 0, 1]).scale(Fraction(1, 5)), Z)
        assert F == expected

    def test_half_power(self):
        # int z^(1/2) dz = (2/3) z^(3/2)
        F = rational_primitive(rf(SQRT_Z))
        assert F == rf(half([0, Fraction(2, 3)]))
        # int z^(-1/2) dz = 2 z^(1/2)
        F2 = rational_primitive(rf(one(), SQRT_Z))
        assert F2 == rf(half([2]))

    def test_double_pole(self):
        # int dz/z^2 = -1/z
        F = rational_primitive(rf(one(), z_power(2)))
        assert F == rf(poly([-1]), Z)

    def test_residue_obstruction(self):
        # int z/(z+1)^2 dz = log(z+1) + 1/(z+1): has a log part
        with pytest.raises(NotRationalError):
            rational_primitive(rf(Z, poly([1, 1]) ** 2))

    def test_roundtrip_random(self):
        rng = random.Random(424)
        for _ in range(25):
            num = _random_poly(rng, 3)
            den = _random_poly(rng, 2, monic=True)
            r = RatFun(num, den)
            if r.is_zero():
                continue
            F = r.derivative()
            back = rational_primitive(F)
            # primitives agree up to the integration constant
            diff = back - r
            assert diff.derivative().is_zero()

    def test_zero_constant_term_normalisation(self):
        F = rational_primitive(rf(poly([1, 2, 3])))
        assert F.as_halfpoly().coeff_at(0).is_zero()


def _random_poly(rng, max_deg, monic=False):
    coeffs = [GaussianRational(Fraction(rng.randint(-3, 3), rng.randint(1, 2)),
                               Fraction(rng.randint(-1, 1)))
              for _ in range(rng.randint(1, max_deg + 1))]
    if monic:
        coeffs.append(gauss(1))
    return HalfPoly(0, coeffs)


class TestAbelSolve:
    def test_members_with_parameter_slot(self):
        particular, scale = abel_solve(Z, poly([1, 0, 0, 0, 0, 1]))
        assert particular == poly([-4, 0, 0, 0, 0, 1])
        assert scale == gauss(4)

    def test_constant_seed(self):
        particular, scale = abel_solve(one(), z_power(4))
        assert particular == z_power(5)
        assert scale == gauss(5)

    def test_log_obstruction(self):
        with pytest.raises(InconsistentError):
            abel_solve(Z, Z)

    def test_half_power_family(self):
        particular, scale = abel_solve(SQRT_Z, z_power(4))
        assert particular == half([0, 0, 0, 0, 1])  # z^(9/2)
        assert scale == gauss(4)

    def test_identity_and_kernel(self):
        rng = random.Random(808)
        from vortexeq.polynomial import wronskian

        cases = [
            (Z, poly([1, 0, 0, 0, 0, 1])),
            (one(), z_power(4)),
            (poly([1, 0, 0, 1]), (poly([-5, 0, 0, 5, 0, 0, 1]).scale(Fraction(1, 5))) ** 2),
            (SQRT_Z, z_power(4)),
        ]
        for f, W in cases:
            mono = f.monic()
            particular, scale = abel_solve(mono, W)
            assert wronskian(particular, mono) == W.scale(scale)
            for _ in range(3):
                s = GaussianRational(rng.randint(-5, 5), rng.randint(-2, 2))
                g = particular + mono.scale(s)
                assert wronskian(g, mono) == W.scale(scale)

    def test_requires_monic(self):
        with pytest.raises(DomainError):
            abel_solve(poly([0, 2]), Z)


class TestOperators:
    def test_apply_free_second_order(self):
        assert apply_operator([0, 0, -1], rf(Z)).is_zero()

    def test_third_order_kernel_member(self):
        # (d^3 - (6/z^2) d)(z^4 + s2 - 4 t1 / z) = 0 for any rational s2, t1
        s2, t1 = gauss(Fraction(3, 7)), gauss(Fraction(-2, 5))
        x = rf(poly([s2, 0, 0, 0, 1])) - rf(poly([t1 * 4]), Z)
        u = rf(poly([6]), z_power(2))
        L = [RatFun.zero(), -u, RatFun.zero(), RatFun.one()]
        assert apply_operator(L, x).is_zero()

    def test_schrodinger_ratio(self):
        # (-d^2 - 2(log P2)'')[P3/P2] = 0 at s1=1, s2=0
        P2 = poly([1, 0, 0, 1])
        P3 = poly([-5, 0, 0, 5, 0, 0, 1])
        u = log_second_derivative(P2, Fraction(-2))
        residual = apply_operator([u, RatFun.zero(), RatFun.of(-1)], RatFun(P3, P2))
        assert residual.is_zero()

    def test_compose_partials(self):
        d = OperatorRep([RatFun.zero(), RatFun.one()])
        assert compose_operators(d, d) == OperatorRep([0, 0, 1])

    def test_compose_factorization(self):
        # B A with f = 1/z gives d^3 (free third-order operator)
        f = rf(one(), Z)
        A = OperatorRep([-f, RatFun.one()])
        B = OperatorRep([-f.derivative() - f.derivative().derivative() / f, f, RatFun.one()])
        L = compose_operators(B, A)
        assert L == OperatorRep([0, 0, 0, 1])

    def test_compose_adjoint_pair(self):
        # (d + 1/z)(d - 1/z) = d^2 (so A*A = -d^2 for kappa = z)
        f = rf(one(), Z)
        Aplus = OperatorRep([f, RatFun.one()])
        Aminus = OperatorRep([-f, RatFun.one()])
        assert compose_operators(Aplus, Aminus) == OperatorRep([0, 0, 1])

    def test_compose_matches_sequential_apply(self):
        rng = random.Random(11)
        f = rf(poly([1, 2]), poly([3, 0, 1]))
        g = rf(poly([0, 1]), poly([1, 1]))
        A = OperatorRep([f, RatFun.one()])
        B = OperatorRep([g, f, RatFun.one()])
        BA = compose_operators(B, A)
        for _ in range(5):
            x = rf(_random_poly(rng, 3), _random_poly(rng, 2, monic=True))
            assert apply_operator(BA, x) == apply_operator(B, apply_operator(A, x))

    def test_leading_coefficient_invariant(self):
        with pytest.raises(DomainError):
            OperatorRep([RatFun.one(), RatFun.of(2)])
