import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from vamod.errors import Inadmissible
from vamod.modbuild import (DerivationSpec, build_module, classify_cases, eval_rational,
                            inverted_derivation, ode_residual)
from vamod.numeric import Poly
from vamod.series import PuiseuxSeries as PS
from vamod.utmatrix import UTMatrix, toeplitz_check

x = PS.x()
s = Poly([0, 1])
d_ds = DerivationSpec.parse("1")
s_d_ds = DerivationSpec.parse("s")
s2_d_ds = DerivationSpec.parse("s^2")


def entries(M, i=0, j=0):
    S = M.S.entry(i, j)
    return [S.coeff(e) for e in range(S.lo, S.trunc)]


class TestDerivationSpec:
    def test_coprime_enforced(self):
        with pytest.raises(ValueError):
            DerivationSpec.parse("s^2-1", "s-1")

    def test_nonzero_enforced(self):
        with pytest.raises(ValueError):
            DerivationSpec.parse("0")


class TestClassify:
    def test_d_ds(self):
        r = classify_cases(d_ds)
        assert r.case1 and r.case1_alpha == 1
        assert r.case0(5) and r.case0(-1)
        assert not r.case_neg1

    def test_s2_d_ds(self):
        r = classify_cases(s2_d_ds)
        assert not r.case1
        assert r.case0(3) and not r.case0(0)
        assert r.case_neg1 and r.case_neg1_alpha == -1

    def test_s_d_ds(self):
        r = classify_cases(s_d_ds)
        assert not r.case1 and not r.case_neg1
        assert r.case0(1) and not r.case0(0)

    def test_case0_excludes_roots_of_pq(self):
        r = classify_cases(DerivationSpec.parse("1+s", "1-s"))
        assert not r.case0(-1) and not r.case0(1) and r.case0(2)


class TestBuild:
    def test_d_ds_n1(self):
        M = build_module(d_ds, 1, n=1, trunc=10)
        assert M.S.entry(0, 0).agrees(x) and M.S.trunc == 10

    def test_d_ds_n2(self):
        M = build_module(d_ds, 1, n=2, trunc=10)
        assert M.S.agrees(PS.constant(UTMatrix.jordan(2)) + UTMatrix.identity(2) * x)

    def test_exponential(self):
        M = build_module(s_d_ds, 0, alpha=1, n=1, trunc=6)
        assert entries(M) == [1, 1, mpq(1, 2), mpq(1, 6), mpq(1, 24), mpq(1, 120)]

    def test_exponential_matrix(self):
        # S' = S with S(0) = I + J gives e^x (I + J)
        M = build_module(s_d_ds, 0, alpha=1, n=2, trunc=6)
        assert entries(M, 0, 1) == entries(M, 0, 0)

    def test_inverse_power(self):
        M = build_module(s2_d_ds, -1, n=1, trunc=10)
        assert M.alpha == -1
        assert M.S.agrees(PS.monomial(UTMatrix([[-1]]), -1))
        assert M.S.trunc >= 10

    def test_rational_derivation_oracle(self):
        # undetermined coefficients (sympy) for (1 - S) S' = 1 + S, S(0) = 0
        M = build_module(DerivationSpec.parse("1+s", "1-s"), 1, n=1, trunc=10)
        expect = [1, 1, mpq(4, 3), mpq(13, 6), mpq(59, 15), mpq(344, 45),
                  mpq(4901, 315), mpq(10313, 315), mpq(400591, 5670)]
        assert entries(M) == expect

    def test_catalan_case_neg1(self):
        # undetermined coefficients (sympy) for (S + 2) S' = S^3, S = -1/x + ...
        M = build_module(DerivationSpec.parse("s^3", "s+2"), -1, n=1, trunc=8)
        assert M.alpha == -1
        assert entries(M) == [-1, 1, 1, 2, 5, 14, 42, 132, 429]

    def test_inadmissible(self):
        with pytest.raises(Inadmissible):
            build_module(s2_d_ds, 1)
        with pytest.raises(Inadmissible):
            build_module(d_ds, -1)
        with pytest.raises(Inadmissible):
            build_module(d_ds, 0, alpha=0)
        with pytest.raises(Inadmissible):
            build_module(d_ds, 1, alpha=2)
        with pytest.raises(Inadmissible):
            build_module(d_ds, 0)

    def test_argument_checks(self):
        with pytest.raises(ValueError):
            build_module(d_ds, 1, n=0)
        with pytest.raises(ValueError):
            build_module(d_ds, 1, n=17)
        with pytest.raises(ValueError):
            build_module(d_ds, 1, trunc=1)

    def test_inverted_derivation(self):
        # s^2 d/ds becomes -d/ds~
        assert inverted_derivation(Poly([0, 0, 1]), Poly([1])) == (Poly([-1]), Poly([1]))

    def test_shift_consistency(self):
        # case 0 at alpha, evaluated at s - alpha, is the case-1 module of the shift
        alpha = 3
        M0 = build_module(d_ds, 0, alpha=alpha, n=3, trunc=8)
        M1 = build_module(d_ds, 1, n=3, trunc=8)
        assert eval_rational(s - alpha, Poly([1]), M0).agrees(M1.S)


class TestEvalRational:
    def test_examples(self):
        M = build_module(d_ds, 1, n=1, trunc=8)
        assert eval_rational(s * s, Poly([1]), M).entry(0, 0).agrees(x * x)
        g = eval_rational(Poly([1]), s - 1, M).entry(0, 0)
        assert [g.coeff(e) for e in range(8)] == [-1] * 8
        M2 = build_module(d_ds, 1, n=2, trunc=8)
        inv = eval_rational(Poly([1]), s, M2)
        expect = UTMatrix.identity(2) * PS.monomial(1, -1) - UTMatrix.jordan(2) * PS.monomial(1, -2)
        assert inv.agrees(expect)

    def test_zero_denominator(self):
        M = build_module(d_ds, 1, n=1, trunc=8)
        with pytest.raises(ZeroDivisionError):
            eval_rational(s, Poly([]), M)


CORPUS = [("1", "1"), ("s", "1"), ("s^2", "1"), ("1+s", "1-s"), ("s^3", "s+2")]


def module_params():
    out = []
    for p, q in CORPUS:
        D = DerivationSpec.parse(p, q)
        r = classify_cases(D)
        if r.case1:
            out.append((p, q, 1, None))
        out.append((p, q, 0, 2))
        if r.case_neg1:
            out.append((p, q, -1, None))
    return out


@pytest.mark.parametrize("p,q,case,alpha", module_params())
@pytest.mark.parametrize("n", [1, 3])
def test_module_invariants(p, q, case, alpha, n):
    D = DerivationSpec.parse(p, q)
    M = build_module(D, case, alpha, n=n, trunc=12)
    assert ode_residual(M).is_zero()
    assert all(toeplitz_check(c) for c in M.S.coeffs)
    s0 = M.semisimple
    assert s0.ld == case and s0.lc == M.alpha
    if case == 1:
        assert M.S.lo >= 0
    if case == 0:
        assert s0.coeff(1) == D.p(M.alpha) / D.q(M.alpha)
    assert M.S.coeff(M.S.lo) is not None
    again = build_module(D, case, alpha, n=n, trunc=12)
    assert again == M


@given(st.integers(-4, 4).filter(lambda a: a != 0), st.integers(1, 4))
def test_case0_any_alpha(alpha, n):
    M = build_module(d_ds, 0, alpha=alpha, n=n, trunc=6)
    # d/ds: S = alpha I + J + x I exactly
    expect = PS.constant(UTMatrix.scalar_matrix(alpha, n) + UTMatrix.jordan(n)) + UTMatrix.identity(n) * x
    assert M.S.agrees(expect)
