from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import assume, given, strategies as st

from vamod.errors import NotInvertible, PrecisionExhausted
from vamod.numeric import Poly
from vamod.series import (PuiseuxSeries as PS, poly_at_series, series_inv, series_mul,
                          series_sqrt, support_check)
from vamod.utmatrix import UTMatrix

from conftest import rationals

x = PS.x()
I2, J2 = UTMatrix.identity(2), UTMatrix.jordan(2)
half = PS.monomial(1, 1, ram=2)  # x^(1/2)


def series(draw_coeffs, lo, trunc):
    return PS(draw_coeffs, lo=lo, ram=1, trunc=trunc)


scalar_series = st.builds(series, st.lists(rationals, min_size=1, max_size=8),
                          st.integers(-2, 2), st.integers(8, 12))
unit_series = st.builds(lambda c, rest, t: PS([c] + rest, 0, 1, t),
                        rationals.filter(lambda q: q != 0),
                        st.lists(rationals, max_size=8), st.integers(6, 12))


def terms(A, upto):
    return [A.coeff(e) for e in range(A.lo, upto)]


class TestBasics:
    def test_normalisation_strips_zeros(self):
        A = PS([0, 0, 3, 0], lo=-1, trunc=10)
        assert A.lo == 1 and A.coeffs == (3,)
        assert A.ld == 1 and A.lc == 3

    def test_zero_series_sits_at_truncation(self):
        Z = PS([0, 0], lo=0, trunc=5)
        assert Z.is_zero() and Z.lo == 5

    def test_coefficient_beyond_precision(self):
        A = PS([1, 1], trunc=3)
        assert A.coeff(2) == 0
        with pytest.raises(PrecisionExhausted):
            A.coeff(3)

    def test_ramification_cap(self):
        with pytest.raises(ValueError):
            PS([1], ram=3)


class TestMul:
    def test_examples(self):
        A = PS([1, 1], trunc=6)
        B = PS([1, -1], trunc=6)
        assert series_mul(A, B) == PS([1, 0, -1], trunc=6)
        assert half * half == x
        P = (PS.constant(I2) + J2 * x) * (PS.constant(I2) - J2 * x)
        assert P == PS.constant(I2)

    def test_precision_rule(self):
        A = PS([1, 1], lo=-1, trunc=4)   # known mod x^4, starts at x^-1
        B = PS([2], lo=2, trunc=5)
        assert (A * B).trunc == min(-1 + 5, 2 + 4)

    @given(scalar_series, scalar_series, scalar_series)
    def test_ring_axioms(self, A, B, C):
        assert ((A * B) * C).agrees(A * (B * C))
        assert (A * (B + C)).agrees(A * B + A * C)
        assert (A * B) == (B * A)

    @given(scalar_series, scalar_series)
    def test_precision_never_exceeds_inputs(self, A, B):
        P = A * B
        bound = min(A.lo + B.trunc, B.lo + A.trunc)
        assert P.trunc <= bound

    @given(scalar_series, scalar_series)
    def test_derivative_is_a_derivation(self, A, B):
        lhs = (A * B).derivative()
        rhs = A.derivative() * B + A * B.derivative()
        assert lhs.agrees(rhs)


class TestInverse:
    def test_geometric(self):
        inv = series_inv(PS([1, -1], trunc=10))
        assert terms(inv, 10) == [1] * 10

    def test_nilpotent_leading_coefficient(self):
        A = PS.constant(J2) + I2 * x
        inv = series_inv(A)
        expect = I2 * PS.monomial(1, -1) - J2 * PS.monomial(1, -2)
        assert inv.agrees(expect)
        assert (inv * A).agrees(PS.constant(I2))

    def test_vanishing_diagonal_entry(self):
        A = PS.constant(J2) + J2 * x
        with pytest.raises(NotInvertible) as exc:
            series_inv(A)
        assert exc.value.witness is not None

    def test_zero(self):
        with pytest.raises(NotInvertible):
            series_inv(PS.zero(5))

    def test_exact_monomial(self):
        assert series_inv(PS.monomial(4, -3)) == PS.monomial(mpq(1, 4), 3)

    @given(scalar_series)
    def test_inverse_property(self, A):
        assume(not A.is_zero())
        inv = series_inv(A)
        assert inv.ld == -A.ld
        one = A * inv
        assert one.agrees(PS.constant(1))
        assert one.trunc >= 1

    @given(st.lists(rationals, min_size=4, max_size=4), st.integers(6, 10))
    def test_matrix_inverse_with_invertible_lead(self, v, t):
        a, b, c, d = v
        assume(a != 0 and c != 0)
        A = PS([UTMatrix([[a, b], [0, c]]), UTMatrix([[d, 1], [0, d]])], trunc=t)
        inv = series_inv(A)
        assert (A * inv).agrees(PS.constant(I2))
        assert inv.ld == -A.ld


class TestDerivative:
    def test_examples(self):
        assert (x * x).derivative() == PS.monomial(2, 1)
        assert half.derivative() == PS.monomial(mpq(1, 2), -1, ram=2)
        assert PS.constant(I2).derivative().is_zero()

    def test_precision_drops_by_one(self):
        A = PS([1, 2, 3], trunc=6)
        assert A.derivative().precision == 5
        B = PS([1, 2], lo=1, ram=2, trunc=7)
        assert B.derivative().precision == Fraction(5, 2)


class TestPolyAtSeries:
    def test_examples(self):
        s = Poly([0, 1])
        assert poly_at_series(s * s, x) == x * x
        S = PS.constant(J2) + I2 * x
        got = poly_at_series(s ** 3 + 1, S)
        assert got == PS.constant(I2) + 3 * J2 * (x * x) + I2 * (x ** 3)
        assert poly_at_series(Poly([1]), S) == PS.constant(1)


class TestSqrt:
    def test_binomial(self):
        # oracle: sympy series of sqrt(4 + x)
        B, ram = series_sqrt(PS([4, 1], trunc=8))
        assert not ram
        assert terms(B, 4) == [2, mpq(1, 4), mpq(-1, 64), mpq(1, 512)]
        assert (B * B).agrees(PS([4, 1], trunc=8))

    def test_ramified(self):
        # oracle: sympy series of sqrt(1 + x^2) = 1 + x^2/2 - x^4/8 + x^6/16 - 5x^8/128
        B, ram = series_sqrt(PS([1, 0, 1], lo=1, trunc=12))
        assert ram and B.ram == 2
        expect = {1: 1, 5: mpq(1, 2), 9: mpq(-1, 8), 13: mpq(1, 16), 17: mpq(-5, 128)}
        for e, c in expect.items():
            assert B.coeff(e) == c
        assert support_check(B, 1, 2)

    def test_one(self):
        assert series_sqrt(PS.constant(1)) == (PS.constant(1), False)

    def test_adjoins_radical(self):
        B, _ = series_sqrt(PS([2, 1], trunc=6))
        assert (B * B).agrees(PS([2, 1], trunc=6))

    @given(scalar_series)
    def test_squares_back(self, A):
        assume(not A.is_zero())
        assume(A.lc > 0 or A.lc < 0)
        B, ram = series_sqrt(A)
        assert ram == (A.lo % 2 == 1)
        assert (B * B).agrees(A)
        assert B.precision <= A.precision - A.ld / 2


class TestSupport:
    def test_examples(self):
        assert support_check(half + half * x, 1, 2)
        assert support_check(1 + x, 0, 1)
        assert not support_check(1 + half, 1, 2)
