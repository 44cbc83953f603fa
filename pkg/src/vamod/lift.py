"""Lifting a semisimple root to a matrix-series root of P^(Z).

Given P^(Z) = sum_i P^_i(x) Z^i with upper-triangular matrix-series
coefficients and a scalar root T0 of the diagonal polynomial, the root
T = sum_k T^(k) (T^(k) on the k-th superdiagonal) is built one
superdiagonal at a time:

    T^(k) = -[dP^(0)/dZ (T0)]^-1 * sum_i sum_{j0+j1+..+ji = k, j1..ji < k}
            P^_i^(j0) T^(j1) ... T^(ji)

Superdiagonals k >= n vanish, so n-1 steps give the exact lift to the
precision carried by the inputs.
"""

from dataclasses import dataclass
from typing import Tuple

from .errors import NotInvertible, NotSeparable, PrecisionExhausted
from .series import PuiseuxSeries, poly_at_series, series_inv, series_sqrt, support_check
from .utmatrix import UTMatrix


def _as_matrix_series(A, n):
    if A.dim is not None:
        return A
    return A.map(lambda c: UTMatrix.scalar_matrix(c, n))


@dataclass(frozen=True)
class LiftProblem:
    Phat: Tuple[PuiseuxSeries, ...]
    T0: PuiseuxSeries
    n: int

    def __post_init__(self):
        object.__setattr__(self, "Phat", tuple(_as_matrix_series(A, self.n) for A in self.Phat))
        if len(self.Phat) < 2:
            raise ValueError("P(Z) must have degree at least 1")
        if self.T0.is_matrix:
            raise TypeError("T0 must have scalar coefficients")

    @property
    def N(self):
        return len(self.Phat) - 1

    @classmethod
    def from_module(cls, P, M, T0):
        """Problem for P(Z) = sum_i P[i](s) Z^i over the module M."""
        Phat = [poly_at_series(Pi, M.S) if not Pi.is_constant()
                else PuiseuxSeries.constant(UTMatrix.scalar_matrix(Pi[0], M.n))
                for Pi in P]
        return cls(tuple(Phat), T0, M.n)

    def diagonal_poly_at(self, Z):
        """P^(0)(Z) as a matrix series (Horner)."""
        result = self.Phat[-1].diagonal_part()
        for A in reversed(self.Phat[:-1]):
            result = result * Z + A.diagonal_part()
        return result

    def diagonal_derivative_at(self, Z):
        N = self.N
        result = self.Phat[-1].diagonal_part() * N
        for i in range(N - 1, 0, -1):
            result = result * Z + self.Phat[i].diagonal_part() * i
        return result

    def check(self):
        """Raise unless T0 is a simple root of the diagonal polynomial."""
        Z = self.T0 * UTMatrix.identity(self.n)
        if not self.diagonal_poly_at(Z).is_zero():
            raise ValueError("T0 is not a root of the diagonal polynomial")
        if self.diagonal_derivative_at(Z).is_zero():
            raise NotSeparable("derivative of the diagonal polynomial vanishes at T0")


def lift_root(prob, trunc=None):
    """Matrix-series root T of P^ with diagonal part T0 * I.

    ``trunc`` (a rational exponent) caps the output precision and raises
    :class:`PrecisionExhausted` if the inputs cannot support it.
    """
    n, N = prob.n, prob.N
    ident = UTMatrix.identity(n)
    zero = PuiseuxSeries.zero()
    T0I = prob.T0 * ident
    Pg = [[A.superdiag_part(j) for j in range(n)] for A in prob.Phat]

    dP = prob.diagonal_derivative_at(T0I)
    try:
        dinv = series_inv(dP)
    except NotInvertible as exc:
        raise NotSeparable("dP/dZ vanishes at the semisimple root") from exc

    T = [T0I]
    # W[i][m]: m-th superdiagonal part of T^i
    W = [[PuiseuxSeries.constant(ident)], [T0I]]
    for i in range(2, N + 1):
        W.append([W[i - 1][0] * T0I])

    for k in range(1, n):
        # parts of T^i at level k with T^(k) still unknown (treated as zero)
        partial = [zero, zero]
        for i in range(2, N + 1):
            acc = T[0] * partial[i - 1]
            for a in range(1, k):
                acc = acc + T[a] * W[i - 1][k - a]
            partial.append(acc)
        total = zero
        for i in range(N + 1):
            for j0 in range(k + 1):
                P = Pg[i][j0]
                if P.is_zero() and P.exact:
                    continue
                if j0 == 0:
                    if i == 0:
                        continue
                    total = total + P * partial[i]
                else:
                    total = total + P * (W[i][k - j0] if (i or k == j0) else zero)
        Tk = -(dinv * total)
        T.append(Tk)
        W[0].append(zero)
        W[1].append(Tk)
        for i in range(2, N + 1):
            acc = T[0] * W[i - 1][k]
            for a in range(1, k + 1):
                acc = acc + T[a] * W[i - 1][k - a]
            W[i].append(acc)

    out = T[0]
    for Tk in T[1:]:
        out = out + Tk
    if trunc is not None:
        if out.precision is not None and out.precision < trunc:
            raise PrecisionExhausted("inputs do not determine the lift to the requested order",
                                     available=out.precision, requested=trunc)
        out = out.truncate_at(trunc)
    return out


def lift_residual(prob, T):
    """P^(T) via Horner; vanishes to the guaranteed precision for a true root."""
    result = prob.Phat[-1]
    for A in reversed(prob.Phat[:-1]):
        result = result * T + A
    return result


def uniqueness_probe(prob, T_other):
    """True iff T_other coincides with the lift of ``prob`` to shared precision.

    A candidate whose diagonal part differs from T0 is rejected outright.
    """
    T0I = prob.T0 * UTMatrix.identity(prob.n)
    if not T_other.diagonal_part().agrees(T0I):
        return False
    return lift_root(prob).agrees(T_other)


def descent_check(B, i, p):
    """True iff every exponent of B lies in -i/p + Z."""
    return support_check(B, i, p)


def derivation_compat_check(Dtheta_image, T):
    """True iff Y(D theta, x) equals dT/dx to shared precision."""
    return Dtheta_image.agrees(T.derivative())


def semisimple_root(P, M):
    """A root of the diagonal polynomial of P(Z) over M for deg P <= 2.

    Degree 1 gives -P0/P1; degree 2 uses the quadratic formula with a
    Puiseux square root.  Higher degrees must be supplied by the caller.
    """
    s0 = M.semisimple
    vals = [poly_at_series(Pi, s0) for Pi in P]
    if len(P) == 2:
        return -(vals[0] * series_inv(vals[1]))
    if len(P) == 3:
        a, b, c = vals[2], vals[1], vals[0]
        disc = b * b - a * c * 4
        root, _ = series_sqrt(disc)
        return (root - b) * series_inv(a * 2)
    raise ValueError("automatic semisimple roots only for degree 1 and 2")
