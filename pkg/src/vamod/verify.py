"""Axiom checks at a finite truncation order.

Untwisted modules are checked on S(x) = Y(s, x): invertibility of S - a,
commutativity of coefficients and the ODE q(S) S' = p(S).  Twisted
structures are checked on the generators s, t and 1/(s - a0), which is
enough to determine the whole module map.  Every comparison is made below
the precision both sides actually know.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Optional

from gmpy2 import mpq

from .errors import VamodError
from .modbuild import ode_residual
from .numeric import Poly, scalar
from .series import PuiseuxSeries, series_inv, support_check
from .twist import SIGMA, eval_element
from .utmatrix import UTMatrix

REPORT_HEADER = ("generator-level checks only; the full twisted Borcherds identity "
                 "is not checked directly")
DEFAULT_ALPHAS = (0, 1, -1, 2)


@dataclass
class Check:
    name: str
    passed: bool
    witness: Optional[PuiseuxSeries] = None
    detail: str = ""


@dataclass
class VerifyReport:
    checks: List[Check]
    precision_used: Optional[Fraction]
    header: str = REPORT_HEADER

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _min_prec(*precs):
    known = [p for p in precs if p is not None]
    return min(known) if known else None


def _zero_check(name, residual):
    """Pass iff ``residual`` vanishes to its known precision."""
    ok = residual.is_zero()
    return Check(name, ok, None if ok else residual, f"known to x^{residual.precision}")


def _commute_check(name, left, right):
    for i, a in enumerate(left.coeffs):
        for j, b in enumerate(right.coeffs):
            c = a * b - b * a
            if not c == 0:
                w = PuiseuxSeries.monomial(c, 0)
                return Check(name, False, w, f"coefficients {left.lo + i} and {right.lo + j}")
    return Check(name, True, detail=f"{len(left.coeffs)}x{len(right.coeffs)} pairs")


def check_untwisted(M, sample_alphas=DEFAULT_ALPHAS):
    S = M.S
    n = M.n
    checks = []
    ident = UTMatrix.identity(n)
    for a in sample_alphas:
        a = scalar(a)
        name = f"invertible(S-({a}))"
        A = S - a
        try:
            inv = series_inv(A)
        except (VamodError, ZeroDivisionError) as exc:
            checks.append(Check(name, False, A, str(exc)))
            continue
        prod = A * inv - ident
        ok = prod.is_zero()
        checks.append(Check(name, ok, None if ok else prod, f"known to x^{prod.precision}"))
    checks.append(_commute_check("commutativity", S, S))
    checks.append(_zero_check("ode_residual", ode_residual(M)))
    return VerifyReport(checks, S.precision)


def _pick_alpha0(q, f):
    a = 1
    while q(a) == 0 or f(a) == 0:
        a += 1
    return a


def default_samples(ts):
    """Samples s, t, st, 1/(s-a0), t/(s-a0) as (num, den, tdeg) triples."""
    a0 = _pick_alpha0(ts.base.D.q, ts.ext.f)
    s = Poly([0, 1])
    one = Poly([1])
    lin = Poly([-a0, 1])
    return [(s, one, 0), (one, one, 1), (s, one, 1), (one, lin, 0), (one, lin, 1)], a0


def _label(sample):
    num, den, k = sample
    out = f"({num})/({den})" if not den.is_constant() or den[0] != 1 else f"({num})"
    return out + (f"*t^{k}" if k else "")


def check_twisted(ts, samples=None):
    M = ts.base
    S, T = M.S, ts.T
    p, q, f = M.D.p, M.D.q, ts.ext.f
    n = M.n
    default, a0 = default_samples(ts)
    samples = list(samples) if samples is not None else default
    checks = []
    precs = [S.precision, T.precision]

    lows = [S.ld if not S.is_zero() else None, T.ld if not T.is_zero() else None]
    bound = min(v for v in lows if v is not None) if any(v is not None for v in lows) else None
    checks.append(Check("lower_bounded_support", True, detail=f"lowest exponent {bound}"))

    vac = eval_element(ts, Poly([1]), Poly([1]), 0) - UTMatrix.identity(n)
    checks.append(_zero_check("vacuum", vac))

    checks.append(_commute_check("commutativity(S,T)", S, T))
    checks.append(_commute_check("commutativity(T,T)", T, T))

    sq = T * T - eval_element(ts, f, Poly([1]), 0)
    precs.append(sq.precision)
    checks.append(_zero_check("multiplicativity(t*t)", sq))
    values = [eval_element(ts, *smp) for smp in samples]
    for i in range(len(samples)):
        for j in range(i, len(samples)):
            n1, d1, k1 = samples[i]
            n2, d2, k2 = samples[j]
            prod = eval_element(ts, n1 * n2, d1 * d2, k1 + k2)
            diff = prod - values[i] * values[j]
            precs.append(diff.precision)
            checks.append(_zero_check(
                f"multiplicativity({_label(samples[i])}*{_label(samples[j])})", diff))

    # D s = p/q
    ds = M.eval(p, q) - S.derivative()
    precs.append(ds.precision)
    checks.append(_zero_check("derivation(s)", ds))
    # D t = p f' / (2 q f) * t
    dt = eval_element(ts, p * f.derivative(), q * f * 2, 1) - T.derivative()
    precs.append(dt.precision)
    checks.append(_zero_check("derivation(t)", dt))
    # D (s - a0)^-1 = -p / (q (s - a0)^2)
    lin = Poly([-a0, 1])
    dl = eval_element(ts, -p, q * lin * lin, 0) - M.eval(Poly([1]), lin).derivative()
    precs.append(dl.precision)
    checks.append(_zero_check(f"derivation(1/(s-{a0}))", dl))

    r, m = (1, 2) if ts.g == SIGMA else (0, 1)
    ok = support_check(T, r, m) and support_check(S, 0, 1)
    checks.append(Check(f"support(T in {Fraction(-r, m)}+Z)", ok,
                        None if ok else T, f"g={ts.g}"))
    return VerifyReport(checks, _min_prec(*precs))


def borcherds_adjoint(a, b, D, order):
    """Y(a, x) b = sum_i (D^i a) b x^i / i! for A = C[s] with D = p d/ds.

    The result has polynomial coefficients; it is exact when D^i a
    eventually vanishes and otherwise known modulo x^order.
    """
    if not D.q.is_constant():
        raise ValueError("the adjoint operator needs D to preserve C[s] (constant q)")
    scale = 1 / D.q[0]
    coeffs = []
    cur = a
    exact = False
    for i in range(order):
        if cur.is_zero():
            exact = True
            break
        coeffs.append(cur * b * mpq(1, factorial(i)))
        cur = D.p * cur.derivative() * scale
    if not exact and cur.is_zero():
        exact = True
    return PuiseuxSeries(coeffs, 0, 1, None if exact else order)
