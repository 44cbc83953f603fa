"""Finite-dimensional indecomposable modules over (C(s), D), D = (p/q) d/ds.

An n-dimensional indecomposable module is determined by the single series
S(x) = Y_M(s, x) with upper-triangular Toeplitz coefficients solving
q(S) S' = p(S).  Its semisimple part S^[0] (the diagonal) has leading
exponent L in {1, 0, -1}:

* L = 1 exists iff p(0) q(0) != 0, with leading coefficient p(0)/q(0);
* L = 0 exists for leading coefficient alpha != 0 iff p(alpha) q(alpha) != 0;
* L = -1 exists iff deg p = deg q + 2, with leading coefficient
  -lead(q)/lead(p).

The L = 1 series is computed coefficient by coefficient starting from
S_(0) = J_n; the other two cases reduce to it by s -> s - alpha and
s -> 1/s.
"""

from dataclasses import dataclass
from typing import Optional

from gmpy2 import mpq

from .config import DEFAULT_TRUNC, MAX_DIM
from .errors import Inadmissible
from .numeric import Poly, poly_gcd, scalar
from .series import PuiseuxSeries, poly_at_series, series_inv
from .utmatrix import UTMatrix, ut_inverse

CASES = (1, 0, -1)


@dataclass(frozen=True)
class DerivationSpec:
    p: Poly
    q: Poly

    def __post_init__(self):
        if self.p.is_zero() or self.q.is_zero():
            raise ValueError("p and q must be nonzero")
        if poly_gcd(self.p, self.q).degree != 0:
            raise ValueError(f"p={self.p} and q={self.q} are not coprime")

    @classmethod
    def parse(cls, p, q="1"):
        return cls(Poly.parse(p), Poly.parse(q))

    def apply(self, u):
        """D applied to a polynomial u, as the pair (p u', q)."""
        return self.p * u.derivative(), self.q

    def __str__(self):
        return f"({self.p})/({self.q}) d/ds"


@dataclass(frozen=True)
class CaseReport:
    D: DerivationSpec
    case1: bool
    case1_alpha: Optional[object]
    case_neg1: bool
    case_neg1_alpha: Optional[object]

    def case0(self, alpha):
        """Admissibility of L = 0 with leading coefficient alpha."""
        alpha = scalar(alpha)
        return alpha != 0 and self.D.p(alpha) * self.D.q(alpha) != 0

    def admissible(self, case, alpha):
        if case == 1:
            return self.case1 and alpha == self.case1_alpha
        if case == 0:
            return self.case0(alpha)
        if case == -1:
            return self.case_neg1 and alpha == self.case_neg1_alpha
        raise ValueError(f"unknown case {case}")

    def forced_alpha(self, case):
        return {1: self.case1_alpha, -1: self.case_neg1_alpha}.get(case)


def classify_cases(D):
    p, q = D.p, D.q
    c1 = p(0) * q(0) != 0
    cm1 = p.degree == q.degree + 2
    return CaseReport(
        D=D,
        case1=c1,
        case1_alpha=p(0) / q(0) if c1 else None,
        case_neg1=cm1,
        case_neg1_alpha=-q.lead / p.lead if cm1 else None,
    )


@dataclass(frozen=True)
class ModuleData:
    """The module with Y_M(s, x) = S, known modulo x^trunc."""

    n: int
    D: DerivationSpec
    case: int
    alpha: object
    S: PuiseuxSeries

    @property
    def trunc(self):
        return self.S.trunc

    @property
    def semisimple(self):
        """Scalar series s0(x) with S^[0] = s0(x) I."""
        s0 = self.S.semisimple_scalar()
        if s0 is None:
            raise ValueError("diagonal part of S is not a multiple of the identity")
        return s0

    def eval(self, num, den=None):
        return eval_rational(num, den if den is not None else Poly.const(1), self)


def _case1_series(p, q, n, terms):
    """Solve q(S) S' = p(S) with S_(0) = J_n, returning terms S_(0..terms-1).

    From the x^(m-1) coefficient, m S_(m) q(S_(0)) equals
    [x^(m-1)] (p(S) - q(S) S') computed without S_(m).  Powers of S are
    extended one coefficient per step, so each step costs O(deg * m)
    matrix products.
    """
    ident = UTMatrix.identity(n)
    zero = UTMatrix.zero(n)
    J = UTMatrix.jordan(n)
    deg = max(p.degree, q.degree, 1)
    S = [J]
    powers = [[ident], [J]]
    for j in range(2, deg + 1):
        powers.append([powers[j - 1][0] * J])

    def combo(poly, k):
        acc = zero
        for i, c in enumerate(poly.coeffs):
            if c != 0:
                acc = acc + powers[i][k] * c
        return acc

    qS = [combo(q, 0)]
    qinv = ut_inverse(qS[0])
    for m in range(1, terms):
        acc = combo(p, m - 1)
        for a in range(m - 1):
            acc = acc - qS[m - 1 - a] * (S[a + 1] * (a + 1))
        S.append((qinv * acc) * mpq(1, m))
        powers[0].append(zero)
        for j in range(1, deg + 1):
            prev = powers[j - 1]
            tot = zero
            for a in range(m + 1):
                if prev[m - a].is_zero() or S[a].is_zero():
                    continue
                tot = tot + S[a] * prev[m - a]
            powers[j].append(tot)
        qS.append(combo(q, m))
    return PuiseuxSeries(S, lo=0, ram=1, trunc=terms)


def inverted_derivation(p, q):
    """(p~, q~) with D = (p~/q~) d/ds~ after the substitution s~ = 1/s.

    Numerator and denominator are multiplied by s~^max(deg p, deg q + 2) and
    reduced to coprime form.
    """
    M = max(p.degree, q.degree + 2)
    num = -(p.reverse(p.degree) * Poly.monomial(M - p.degree + 2))
    den = q.reverse(q.degree) * Poly.monomial(M - q.degree)
    g = poly_gcd(num, den)
    num, den = num // g, den // g
    c = den.lead
    return num * (1 / c), den * (1 / c)


def build_module(D, case, alpha=None, n=1, trunc=DEFAULT_TRUNC):
    """The unique n-dimensional indecomposable module with the given data."""
    if n < 1 or n > MAX_DIM:
        raise ValueError(f"dimension must be in 1..{MAX_DIM}")
    if trunc < 2:
        raise ValueError("trunc must be at least 2")
    report = classify_cases(D)
    if case not in CASES:
        raise ValueError(f"case must be one of {CASES}")
    if alpha is None:
        alpha = report.forced_alpha(case)
        if alpha is None:
            raise Inadmissible(case, None, "case 0 needs an explicit alpha"
                               if case == 0 else "no admissible alpha")
    alpha = scalar(alpha)
    if not report.admissible(case, alpha):
        raise Inadmissible(case, alpha)

    p, q = D.p, D.q
    if case == 1:
        S = _case1_series(p, q, n, trunc)
    elif case == 0:
        S = _case1_series(p.shift(alpha), q.shift(alpha), n, trunc) + alpha
    else:
        pt, qt = inverted_derivation(p, q)
        extra = n + 2
        while True:
            St = _case1_series(pt, qt, n, trunc + extra)
            S = series_inv(St)
            if S.trunc >= trunc:
                break
            extra += trunc - S.trunc
        S = S.truncate(trunc)
    return ModuleData(n=n, D=D, case=case, alpha=alpha, S=S)


def eval_rational(num, den, M):
    """Y_M(num/den, x) = num(S) den(S)^-1."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    top = poly_at_series(num, M.S)
    if den.is_constant():
        return top * (1 / den[0])
    return top * series_inv(poly_at_series(den, M.S))


def ode_residual(M):
    """q(S) dS/dx - p(S); zero to the guaranteed precision for valid modules."""
    S = M.S
    return poly_at_series(M.D.q, S) * S.derivative() - poly_at_series(M.D.p, S)
