import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from vamod.errors import PredicateMismatch
from vamod.lift import LiftProblem, uniqueness_probe
from vamod.modbuild import DerivationSpec, ModuleData, build_module
from vamod.numeric import Poly, squarefree_check
from vamod.series import PuiseuxSeries as PS, poly_at_series, support_check
from vamod.twist import (QuadExt, build_twisted_structure, eval_element, galois_conjugate,
                         reduce_element, structures_equivalent, twist_classify, twist_decide)
from vamod.utmatrix import UTMatrix

d_ds = DerivationSpec.parse("1")
s2_d_ds = DerivationSpec.parse("s^2")
I2, J2 = UTMatrix.identity(2), UTMatrix.jordan(2)
SQRT_1_X3 = {0: 1, 3: mpq(1, 2), 6: mpq(-1, 8), 9: mpq(1, 16), 12: mpq(-5, 128)}
B_COEFFS = {2: mpq(3, 2), 5: mpq(-3, 4), 8: mpq(9, 16), 11: mpq(-15, 32)}


def ext(text):
    return QuadExt.parse(text)


@pytest.fixture(scope="module")
def modules():
    return {
        1: build_module(d_ds, 1, n=1, trunc=16),
        0: build_module(d_ds, 0, alpha=-1, n=1, trunc=16),
        -1: build_module(s2_d_ds, -1, n=1, trunc=16),
    }


def test_quad_ext_validation():
    with pytest.raises(ValueError):
        ext("s^2")
    with pytest.raises(ValueError):
        ext("3")
    assert ext("s").degree_relaxed and not ext("s^3+1").degree_relaxed


class TestClassify:
    def test_case1(self, modules):
        assert twist_classify(ext("s^3+1"), modules[1])[0] == "id"
        g, w = twist_classify(ext("s^3+s"), modules[1])
        assert g == "sigma" and w["valuation"] == 1 and w["predicate"] == "f0_zero"

    def test_case0(self, modules):
        g, w = twist_classify(ext("s^3+1"), modules[0])
        assert g == "sigma" and w["predicate"] == "f_alpha_zero"

    def test_case_neg1(self, modules):
        g, w = twist_classify(ext("s^3+1"), modules[-1])
        assert w == {"g": "sigma", "valuation": -3, "predicate": "deg_f_odd",
                     "degree_relaxed": False}

    def test_mismatch_detected(self, modules):
        M = modules[1]
        # a module claiming case 0 at alpha = 5 while S^[0] starts at 0
        liar = ModuleData(M.n, M.D, 0, mpq(5), M.S)
        assert twist_decide(ext("s"), liar)[:2] == ("sigma", "id")
        with pytest.raises(PredicateMismatch):
            twist_classify(ext("s"), liar)


squarefree = st.lists(st.integers(-3, 3), min_size=2, max_size=8).map(Poly).filter(
    lambda f: f.degree >= 1 and squarefree_check(f))


@given(squarefree)
def test_trichotomy(f):
    for M in (build_module(d_ds, 1, n=2, trunc=6), build_module(d_ds, 0, alpha=-1, n=2, trunc=6),
              build_module(s2_d_ds, -1, n=2, trunc=6)):
        g, predicted, _ = twist_decide(QuadExt(f), M)
        assert g == predicted


class TestBuild:
    def test_scalar_binomial(self, modules):
        ts = build_twisted_structure(ext("s^3+1"), modules[1])
        assert ts.g == "id" and ts.ram == 1
        for e, c in SQRT_1_X3.items():
            assert ts.T.coeff(e)[0, 0] == c

    def test_ramified_matrix(self):
        M = build_module(d_ds, 1, n=2, trunc=12)
        ts = build_twisted_structure(ext("s"), M)
        assert ts.g == "sigma" and ts.ram == 2
        expect = I2 * PS.monomial(1, 1, ram=2) + (mpq(1, 2) * J2) * PS.monomial(1, -1, ram=2)
        assert ts.T.agrees(expect)
        assert (ts.T * ts.T).agrees(M.S)

    def test_matrix_closed_form(self):
        M = build_module(d_ds, 1, n=2, trunc=14)
        ts = build_twisted_structure(ext("s^3+1"), M)
        for e in range(12):
            assert ts.T.coeff(e) == SQRT_1_X3.get(e, 0) * I2 + B_COEFFS.get(e, 0) * J2

    @pytest.mark.parametrize("f", ["s^3+1", "s^3+s", "s", "s^2-2", "s^5-s+1", "s^2+1"])
    @pytest.mark.parametrize("case", [1, 0, -1])
    def test_structure_invariants(self, f, case):
        M = (build_module(d_ds, 1, n=2, trunc=16) if case == 1 else
             build_module(d_ds, 0, alpha=2, n=2, trunc=16) if case == 0 else
             build_module(s2_d_ds, -1, n=2, trunc=24))
        ts = build_twisted_structure(ext(f), M)
        assert (ts.T * ts.T - poly_at_series(ts.ext.f, M.S)).is_zero()
        r, p = (1, 2) if ts.g == "sigma" else (0, 1)
        assert support_check(ts.T, r, p)
        assert (ts.ram == 2) == (ts.g == "sigma")
        # restriction to C(s) is the base module
        assert eval_element(ts, Poly([0, 1]), Poly([1]), 0) == M.S


class TestGalois:
    @pytest.fixture
    def ts(self):
        return build_twisted_structure(ext("s"), build_module(d_ds, 1, n=2, trunc=10))

    def test_negates(self, ts):
        c = galois_conjugate(ts)
        assert c.T == -ts.T and c.g == ts.g and c.base is ts.base

    def test_involution(self, ts):
        assert galois_conjugate(galois_conjugate(ts)) == ts

    def test_equivalence(self, ts):
        c = galois_conjugate(ts)
        assert c.T != ts.T
        assert structures_equivalent(ts, ts) == "equal"
        assert structures_equivalent(ts, c) == "conjugate"
        cs = list(ts.T.coeffs)
        cs[0] = cs[0] + J2
        tampered = type(ts)(ts.base, ts.ext, ts.g, ts.ram, PS(cs, ts.T.lo, ts.T.ram, ts.T.trunc))
        assert structures_equivalent(ts, tampered) == "distinct"

    def test_orbit_exhausts_roots(self, ts):
        M = ts.base
        Phat = (-poly_at_series(ts.ext.f, M.S), PS.zero(), PS.constant(I2))
        for sign in (1, -1):
            T0 = ts.T.entry(0, 0) * sign
            prob = LiftProblem(Phat, T0, M.n)
            assert uniqueness_probe(prob, ts.T) == (sign == 1)
            assert uniqueness_probe(prob, galois_conjugate(ts).T) == (sign == -1)


def test_reduce_element():
    f = Poly([1, 0, 0, 1])
    one = Poly([1])
    assert reduce_element(one, one, 2, f) == (f, one, 0)
    assert reduce_element(one, one, 3, f) == (f, one, 1)
    assert reduce_element(one, one, -1, f) == (one, f, 1)
    assert reduce_element(one, one, -2, f) == (one, f, 0)
