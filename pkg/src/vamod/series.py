"""Truncated Puiseux series with exact coefficients.

A :class:`PuiseuxSeries` is ``sum_k coeffs[k] * x^((lo + k)/ram)`` known
modulo ``x^(trunc/ram)``; ``trunc=None`` marks an exact (finite) series.
Coefficients are field scalars or :class:`~vamod.utmatrix.UTMatrix`
values; scalars combine with matrices as multiples of the identity.

Every operation derives its own output precision from its inputs, so a
result never claims more known terms than the inputs determine.  Series
are normalised eagerly: leading and trailing zero coefficients are
stripped, hence ``ld``/``lc`` are always the true leading exponent and
coefficient of a nonzero series.
"""

from fractions import Fraction
from math import gcd

from gmpy2 import mpq

from .config import DEFAULT_EXPANSION_TERMS, MAX_RAMIFICATION
from .errors import NotInvertible, PrecisionExhausted, SingularMatrix
from .numeric import ZERO, field_sqrt, is_scalar, scalar
from .utmatrix import UTMatrix, ut_inverse


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _is_zero(c):
    return c == 0


def _coeff(c):
    return scalar(c) if isinstance(c, (int, Fraction)) else c


def _promote(a, b):
    """Write scalar-coefficient operands as multiples of the identity."""
    na, nb = a.dim, b.dim
    if na is None and nb is not None:
        a = a.map(lambda c: c if isinstance(c, UTMatrix) else UTMatrix.scalar_matrix(c, nb))
    elif nb is None and na is not None:
        b = b.map(lambda c: c if isinstance(c, UTMatrix) else UTMatrix.scalar_matrix(c, na))
    return a, b


class PuiseuxSeries:
    __slots__ = ("ram", "lo", "trunc", "coeffs")

    def __init__(self, coeffs=(), lo=0, ram=1, trunc=None):
        if ram < 1:
            raise ValueError("ramification index must be positive")
        if ram > MAX_RAMIFICATION:
            raise ValueError(f"ramification {ram} exceeds the supported maximum {MAX_RAMIFICATION}")
        cs = [_coeff(c) for c in coeffs]
        if trunc is not None and lo + len(cs) > trunc:
            del cs[max(trunc - lo, 0):]
        start = 0
        while start < len(cs) and _is_zero(cs[start]):
            start += 1
        end = len(cs)
        while end > start and _is_zero(cs[end - 1]):
            end -= 1
        cs = cs[start:end]
        lo += start
        if not cs:
            lo = trunc if trunc is not None else 0
        self.ram = ram
        self.lo = lo
        self.trunc = trunc
        self.coeffs = tuple(cs)

    # -- constructors
    @classmethod
    def constant(cls, c):
        return cls([_coeff(c)])

    @classmethod
    def monomial(cls, c, e=1, ram=1):
        """c * x^(e/ram), exact."""
        return cls([_coeff(c)], lo=e, ram=ram)

    @classmethod
    def x(cls):
        return cls.monomial(mpq(1), 1)

    @classmethod
    def zero(cls, trunc=None, ram=1):
        return cls([], lo=0, ram=ram, trunc=trunc)

    @classmethod
    def from_terms(cls, terms, ram=1, trunc=None):
        """Build from ``{exponent_numerator: coeff}``."""
        if not terms:
            return cls.zero(trunc, ram)
        lo = min(terms)
        hi = max(terms)
        return cls([terms.get(e, ZERO) for e in range(lo, hi + 1)], lo=lo, ram=ram, trunc=trunc)

    # -- structure
    @property
    def exact(self):
        return self.trunc is None

    def is_zero(self):
        """True when every known coefficient vanishes."""
        return not self.coeffs

    @property
    def ld(self):
        if not self.coeffs:
            raise ValueError("zero series has no leading exponent")
        return Fraction(self.lo, self.ram)

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("zero series has no leading coefficient")
        return self.coeffs[0]

    @property
    def end(self):
        """One past the numerator of the last stored exponent."""
        return self.lo + len(self.coeffs)

    @property
    def precision(self):
        """Exponent bound as a Fraction (``None`` for exact series)."""
        return None if self.trunc is None else Fraction(self.trunc, self.ram)

    @property
    def is_matrix(self):
        return any(isinstance(c, UTMatrix) for c in self.coeffs)

    @property
    def dim(self):
        for c in self.coeffs:
            if isinstance(c, UTMatrix):
                return c.n
        return None

    def coeff(self, e):
        """Coefficient of x^(e/ram)."""
        if self.trunc is not None and e >= self.trunc:
            raise PrecisionExhausted(f"coefficient {e}/{self.ram} is beyond the known precision",
                                     available=self.precision, requested=Fraction(e, self.ram))
        k = e - self.lo
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def coeff_at(self, exponent):
        """Coefficient of x^exponent for a rational exponent."""
        exponent = Fraction(exponent)
        num = exponent * self.ram
        if num.denominator != 1:
            if self.trunc is not None and exponent >= self.precision:
                raise PrecisionExhausted("exponent beyond known precision")
            return ZERO
        return self.coeff(int(num))

    def items(self):
        """Nonzero terms as ``(Fraction exponent, coeff)`` pairs."""
        return [(Fraction(self.lo + k, self.ram), c)
                for k, c in enumerate(self.coeffs) if not _is_zero(c)]

    def exponents(self):
        return [e for e, _ in self.items()]

    # -- ramification handling
    def rescale(self, k):
        """Same series written at ramification ram*k."""
        if k == 1:
            return self
        cs = []
        for i, c in enumerate(self.coeffs):
            if i:
                cs.extend([ZERO] * (k - 1))
            cs.append(c)
        trunc = None if self.trunc is None else self.trunc * k
        return PuiseuxSeries(cs, self.lo * k, self.ram * k, trunc)

    def with_ram(self, ram):
        if ram % self.ram:
            raise ValueError(f"cannot write ramification {self.ram} series at {ram}")
        return self.rescale(ram // self.ram)

    def _aligned(self, other):
        r = self.ram * other.ram // gcd(self.ram, other.ram)
        return self.with_ram(r), other.with_ram(r)

    def truncate(self, trunc):
        """Forget every term at or beyond x^(trunc/ram)."""
        t = _min_trunc(self.trunc, trunc)
        return PuiseuxSeries(self.coeffs, self.lo, self.ram, t)

    def truncate_at(self, exponent):
        """Forget every term at or beyond x^exponent (rational exponent)."""
        num = Fraction(exponent) * self.ram
        return self.truncate(-((-num.numerator) // num.denominator))

    def map(self, fn):
        return PuiseuxSeries([fn(c) for c in self.coeffs], self.lo, self.ram, self.trunc)

    # -- ring operations
    @staticmethod
    def _coerce(other):
        if isinstance(other, PuiseuxSeries):
            return other
        if is_scalar(other) or isinstance(other, UTMatrix):
            return PuiseuxSeries.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = _promote(*self._aligned(o))
        if a.exact and a.is_zero():
            return b
        if b.exact and b.is_zero():
            return a
        trunc = _min_trunc(a.trunc, b.trunc)
        lo = min(a.lo, b.lo)
        end = max(a.end, b.end)
        if trunc is not None:
            end = min(end, trunc)
        cs = []
        for e in range(lo, end):
            ia, ib = e - a.lo, e - b.lo
            ca = a.coeffs[ia] if 0 <= ia < len(a.coeffs) else None
            cb = b.coeffs[ib] if 0 <= ib < len(b.coeffs) else None
            if ca is None:
                cs.append(ZERO if cb is None else cb)
            elif cb is None:
                cs.append(ca)
            else:
                cs.append(ca + cb)
        return PuiseuxSeries(cs, lo, a.ram, trunc)

    def __radd__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + self

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mul(self, o)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mul(o, self)

    def __truediv__(self, other):
        if is_scalar(other):
            inv = 1 / mpq(other) if not hasattr(other, "inverse") else other.inverse()
            return self.map(lambda c: c * inv)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = PuiseuxSeries.constant(mpq(1))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._aligned(o)
        return (a.trunc == b.trunc and a.lo == b.lo
                and len(a.coeffs) == len(b.coeffs)
                and all(x == y for x, y in zip(a.coeffs, b.coeffs)))

    __hash__ = None

    def agrees(self, other, upto=None):
        """Coefficient-wise equality below the shared precision.

        ``upto`` optionally lowers the comparison bound (rational exponent).
        """
        o = self._coerce(other)
        a, b = self._aligned(o)
        bound = _min_trunc(a.trunc, b.trunc)
        if upto is not None:
            num = Fraction(upto) * a.ram
            bound = _min_trunc(bound, -((-num.numerator) // num.denominator))
        if bound is None:
            return a == b
        lo = min(a.lo if a.coeffs else bound, b.lo if b.coeffs else bound)
        for e in range(lo, bound):
            if a.coeff(e) != b.coeff(e):
                return False
        return True

    # -- calculus
    def derivative(self):
        """Term-wise d/dx; the known precision drops by one exponent unit."""
        r = self.ram
        cs = [mpq(self.lo + k, r) * c for k, c in enumerate(self.coeffs)]
        trunc = None if self.trunc is None else self.trunc - r
        if not cs:
            return PuiseuxSeries.zero(trunc, r)
        return PuiseuxSeries(cs, self.lo - r, r, trunc)

    def inverse(self, terms=None):
        return series_inv(self, terms)

    def sqrt(self, terms=None):
        return series_sqrt(self, terms)

    # -- matrix-coefficient views
    def superdiag_part(self, k):
        return self.map(lambda c: c.superdiag_part(k) if isinstance(c, UTMatrix)
                        else (c if k == 0 else ZERO))

    def entry(self, i, j):
        """Scalar series of the (i, j) entries."""
        return self.map(lambda c: c[i, j] if isinstance(c, UTMatrix) else (c if i == j else ZERO))

    def diagonal_part(self):
        return self.superdiag_part(0)

    def semisimple_scalar(self):
        """Scalar series s(x) with diagonal part s(x)*I, or None if not scalar."""
        n = self.dim
        if n is None:
            return self
        first = self.entry(0, 0)
        for i in range(1, n):
            if self.entry(i, i) != first:
                return None
        return first

    # -- printing
    def format(self, var="x"):
        parts = []
        for e, c in self.items():
            cs = str(c)
            if e == 0:
                parts.append(cs)
            else:
                ex = str(e) if e.denominator == 1 else f"({e})"
                mono = var if e == 1 else f"{var}^{ex}"
                parts.append(f"({cs})*{mono}")
        if self.trunc is not None:
            p = self.precision
            parts.append(f"O({var}^{p if p.denominator == 1 else f'({p})'})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"PuiseuxSeries({self.format()})"


def _mul(a, b):
    a, b = a._aligned(b)
    if (a.exact and a.is_zero()) or (b.exact and b.is_zero()):
        return PuiseuxSeries.zero(None, a.ram)
    ta = None if a.trunc is None else a.trunc
    tb = None if b.trunc is None else b.trunc
    cands = []
    if tb is not None:
        cands.append(a.lo + tb)
    if ta is not None:
        cands.append(b.lo + ta)
    trunc = min(cands) if cands else None
    lo = a.lo + b.lo
    la, lb = len(a.coeffs), len(b.coeffs)
    length = la + lb - 1 if la and lb else 0
    if trunc is not None:
        length = min(length, trunc - lo)
    if length <= 0:
        return PuiseuxSeries.zero(trunc, a.ram)
    out = [None] * length
    ac, bc = a.coeffs, b.coeffs
    for i in range(min(la, length)):
        x = ac[i]
        if _is_zero(x):
            continue
        for j in range(min(lb, length - i)):
            y = bc[j]
            if _is_zero(y):
                continue
            p = x * y
            k = i + j
            out[k] = p if out[k] is None else out[k] + p
    return PuiseuxSeries([ZERO if c is None else c for c in out], lo, a.ram, trunc)


def series_mul(A, B):
    return A * B


# ---------------------------------------------------------------------------
# inversion

def _recurrence_inverse(A, inv0):
    """Inverse of a series whose leading coefficient has inverse ``inv0``."""
    cs = A.coeffs
    r = A.trunc - A.lo
    out = [inv0]
    for k in range(1, r):
        acc = None
        for j in range(1, min(k, len(cs) - 1) + 1):
            c = cs[j]
            if _is_zero(c):
                continue
            t = c * out[k - j]
            acc = t if acc is None else acc + t
        out.append(ZERO if acc is None else -(inv0 * acc))
    return PuiseuxSeries(out, -A.lo, A.ram, A.trunc - 2 * A.lo)


def series_inv(A, terms=None):
    """Multiplicative inverse.

    Scalar series and matrix series with an invertible leading coefficient
    use the coefficient recurrence.  Matrix series whose leading coefficient
    is singular are inverted through the diagonal part: with A = Dg + N,
    A^-1 = sum_k (-Dg^-1 N)^k Dg^-1, which terminates because N is strictly
    upper triangular.  Raises :class:`NotInvertible` when a diagonal entry
    vanishes to all known orders.
    """
    if A.is_zero():
        raise NotInvertible("zero series is not invertible", witness=None)
    if A.exact:
        if len(A.coeffs) == 1:
            c = A.coeffs[0]
            try:
                inv = ut_inverse(c) if isinstance(c, UTMatrix) else 1 / c
            except SingularMatrix:
                pass
            else:
                return PuiseuxSeries([inv], -A.lo, A.ram, None)
        A = A.truncate(A.lo + (terms or DEFAULT_EXPANSION_TERMS) * A.ram)
    lc = A.coeffs[0]
    if not isinstance(lc, UTMatrix):
        return _recurrence_inverse(A, 1 / lc)
    if all(d != 0 for d in lc.diagonal()):
        return _recurrence_inverse(A, ut_inverse(lc))
    n = lc.n
    diag = [A.entry(i, i) for i in range(n)]
    for i, d in enumerate(diag):
        if d.is_zero():
            raise NotInvertible(f"diagonal entry {i} vanishes to the known precision", witness=lc)
    dinv = None
    for i, d in enumerate(diag):
        term = d.inverse() * UTMatrix.elementary(i, i, n)
        dinv = term if dinv is None else dinv + term
    N = A - A.diagonal_part()
    Y = -(dinv * N)
    acc = PuiseuxSeries.constant(UTMatrix.identity(n))
    power = acc
    for _ in range(1, n):
        power = power * Y
        acc = acc + power
    return acc * dinv


# ---------------------------------------------------------------------------
# square roots

def _newton_sqrt_unit(C, r):
    """Square root of a scalar series 1 + O(x) to ``r`` terms by Newton iteration."""
    y = PuiseuxSeries.constant(mpq(1))
    p = 1
    exactC = PuiseuxSeries(C.coeffs, C.lo, C.ram, None)
    while p < r:
        p = min(2 * p, r)
        Cp = exactC.truncate(p)
        yinv = series_inv(PuiseuxSeries(y.coeffs, y.lo, y.ram, None).truncate(p))
        y = ((y + Cp * yinv) / 2).truncate(p)
        y = PuiseuxSeries(y.coeffs, y.lo, y.ram, None)
    return PuiseuxSeries(y.coeffs, 0, C.ram, r)


def series_sqrt(A, terms=None):
    """Square root of a nonzero scalar series.

    Returns ``(B, ramified)``.  When the leading exponent numerator is odd
    the result lives at twice the ramification and ``ramified`` is True.
    The leading coefficient's root may adjoin a square root to Q(i).
    """
    if A.is_zero():
        raise ValueError("square root of the zero series")
    if A.is_matrix:
        raise TypeError("series_sqrt expects scalar coefficients")
    ramified = A.lo % 2 != 0
    if ramified:
        A = A.rescale(2)
    c0 = A.coeffs[0]
    root0 = field_sqrt(c0)
    if A.exact and len(A.coeffs) == 1:
        return PuiseuxSeries([root0], A.lo // 2, A.ram, None), ramified
    if A.exact:
        r = (terms or DEFAULT_EXPANSION_TERMS) * A.ram
    else:
        r = A.trunc - A.lo
    inv0 = 1 / c0
    C = PuiseuxSeries([c * inv0 for c in A.coeffs], 0, A.ram, r)
    y = _newton_sqrt_unit(C, r)
    B = PuiseuxSeries([root0 * c for c in y.coeffs], A.lo // 2, A.ram, A.lo // 2 + r)
    return B, ramified


# ---------------------------------------------------------------------------

def poly_at_series(p, A):
    """p(A) by Horner's rule; truncation propagates through each step."""
    if p.is_zero():
        return PuiseuxSeries.zero()
    cs = p.coeffs
    result = PuiseuxSeries.constant(cs[-1])
    for c in reversed(cs[:-1]):
        result = result * A
        if c != 0:
            result = result + c
    return result


def support_check(A, r, p):
    """True iff every exponent of A lies in -r/p + Z."""
    shift = Fraction(r, p)
    return all((e + shift).denominator == 1 for e in A.exponents())
