"""Exact scalars and univariate polynomials.

Scalars live in Q(i)(sqrt(K)) for at most one radicand K.  Rational values
are plain gmpy2 ``mpq`` objects; anything with an imaginary or radical part
is an :class:`Alg`.  The two mix freely under ``+ - * /`` and results that
happen to be rational collapse back to ``mpq``, so equality is by value.

Polynomials (:class:`Poly`) are dense coefficient tuples, lowest degree
first, with the leading coefficient nonzero.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import gmpy2
from gmpy2 import mpq

from .errors import TowerExhausted

ZERO = mpq(0)
ONE = mpq(1)


# ---------------------------------------------------------------------------
# Gaussian-rational helpers on (re, im) pairs

def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gadd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _gsub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _ginv(x):
    n = x[0] * x[0] + x[1] * x[1]
    if n == 0:
        raise ZeroDivisionError("division by zero")
    return (x[0] / n, -x[1] / n)


def _qsqrt(q):
    """Rational square root of ``q`` or None."""
    if q < 0:
        return None
    q = mpq(q)
    num, den = q.numerator, q.denominator
    if gmpy2.is_square(num) and gmpy2.is_square(den):
        return mpq(gmpy2.isqrt(num), gmpy2.isqrt(den))
    return None


def _gsqrt(x):
    """Square root of a Gaussian rational inside Q(i), or None."""
    a, b = x
    if b == 0:
        r = _qsqrt(a)
        if r is not None:
            return (r, ZERO)
        r = _qsqrt(-a)
        return None if r is None else (ZERO, r)
    m = _qsqrt(a * a + b * b)
    if m is None:
        return None
    re = _qsqrt((a + m) / 2)
    if re is None:
        return None
    return (re, b / (2 * re))


# ---------------------------------------------------------------------------
# Towers

@dataclass(frozen=True)
class Tower:
    """Descriptor of the field a scalar lives in.

    ``radicand`` is ``None`` or a Gaussian pair (re, im) that is not a
    square in Q(i).
    """

    gauss: bool = False
    radicand: Optional[Tuple] = None

    @property
    def extended(self):
        return self.radicand is not None

    def __str__(self):
        base = "GAUSS" if self.gauss else "RAT"
        if self.radicand is None:
            return base
        return f"{base}(sqrt({_fmt_gauss(self.radicand)}))"


RAT = Tower(False, None)
GAUSS = Tower(True, None)


def tower_of(x):
    if isinstance(x, Alg):
        gauss = x.b != 0 or x.d != 0 or (x.K is not None and x.K[1] != 0)
        return Tower(gauss, x.K)
    return RAT


def join_towers(t1, t2):
    gauss = t1.gauss or t2.gauss
    if t1.radicand is None:
        return Tower(gauss, t2.radicand)
    if t2.radicand is None or t1.radicand == t2.radicand:
        return Tower(gauss, t1.radicand)
    k, _, _ = _unify(t1.radicand, t2.radicand)
    return Tower(gauss, k)


# ---------------------------------------------------------------------------
# Algebraic scalars

def _parts(x):
    if isinstance(x, Alg):
        return (x.a, x.b), (x.c, x.d), x.K
    if isinstance(x, (int, type(ZERO))):
        return (mpq(x), ZERO), (ZERO, ZERO), None
    if isinstance(x, Fraction):
        return (mpq(x), ZERO), (ZERO, ZERO), None
    return None


def _unify(k1, k2):
    """Common radicand for two towers.

    Returns ``(K, w1, w2)`` such that sqrt(Kj) = wj * sqrt(K).
    """
    one = (ONE, ZERO)
    if k1 is None:
        return k2, one, one
    if k2 is None or k1 == k2:
        return k1, one, one
    w = _gsqrt(_gmul(k1, _ginv(k2)))
    if w is None:
        raise TowerExhausted(
            f"values from Q(i)(sqrt({_fmt_gauss(k1)})) and "
            f"Q(i)(sqrt({_fmt_gauss(k2)})) cannot be combined"
        )
    return k2, w, one


def _make(A, B, K):
    if B[0] == 0 and B[1] == 0:
        if A[1] == 0:
            return mpq(A[0])
        return Alg(A[0], A[1], ZERO, ZERO, None)
    return Alg(A[0], A[1], B[0], B[1], K)


class Alg:
    """A non-rational element (a + b*i) + (c + d*i)*sqrt(K).

    Instances are never rational; use :func:`scalar` or arithmetic to
    build them.
    """

    __slots__ = ("a", "b", "c", "d", "K")

    def __init__(self, a, b, c=ZERO, d=ZERO, K=None):
        self.a, self.b, self.c, self.d = mpq(a), mpq(b), mpq(c), mpq(d)
        self.K = None if K is None else (mpq(K[0]), mpq(K[1]))

    # -- binary plumbing
    def _both(self, other):
        p = _parts(other)
        if p is None:
            return None
        A1, B1, K1 = (self.a, self.b), (self.c, self.d), self.K
        A2, B2, K2 = p
        K, w1, w2 = _unify(K1, K2)
        return A1, _gmul(B1, w1), A2, _gmul(B2, w2), K

    def __add__(self, other):
        r = self._both(other)
        if r is None:
            return NotImplemented
        A1, B1, A2, B2, K = r
        return _make(_gadd(A1, A2), _gadd(B1, B2), K)

    __radd__ = __add__

    def __sub__(self, other):
        r = self._both(other)
        if r is None:
            return NotImplemented
        A1, B1, A2, B2, K = r
        return _make(_gsub(A1, A2), _gsub(B1, B2), K)

    def __rsub__(self, other):
        r = self._both(other)
        if r is None:
            return NotImplemented
        A1, B1, A2, B2, K = r
        return _make(_gsub(A2, A1), _gsub(B2, B1), K)

    def __neg__(self):
        return Alg(-self.a, -self.b, -self.c, -self.d, self.K)

    def __pos__(self):
        return self

    def __mul__(self, other):
        r = self._both(other)
        if r is None:
            return NotImplemented
        A1, B1, A2, B2, K = r
        if K is None:
            return _make(_gmul(A1, A2), (ZERO, ZERO), None)
        re = _gadd(_gmul(A1, A2), _gmul(_gmul(B1, B2), K))
        rad = _gadd(_gmul(A1, B2), _gmul(B1, A2))
        return _make(re, rad, K)

    __rmul__ = __mul__

    def inverse(self):
        A, B, K = (self.a, self.b), (self.c, self.d), self.K
        if K is None:
            return _make(_ginv(A), (ZERO, ZERO), None)
        ni = _ginv(_gsub(_gmul(A, A), _gmul(_gmul(B, B), K)))
        return _make(_gmul(A, ni), _gmul((-B[0], -B[1]), ni), K)

    def __truediv__(self, other):
        if _parts(other) is None:
            return NotImplemented
        return self * (other.inverse() if isinstance(other, Alg) else 1 / mpq(other))

    def __rtruediv__(self, other):
        if _parts(other) is None:
            return NotImplemented
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(k)):
            result = result * base
        return result

    def __eq__(self, other):
        p = _parts(other)
        if p is None:
            return NotImplemented
        try:
            r = self._both(other)
        except TowerExhausted:
            return False
        A1, B1, A2, B2, _ = r
        return A1 == A2 and B1 == B2

    def __hash__(self):
        # radical part depends on the radicand representation; base part does not
        return hash((self.a, self.b))

    def conjugate_radical(self):
        """Image under sqrt(K) -> -sqrt(K)."""
        return Alg(self.a, self.b, -self.c, -self.d, self.K)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Alg({format_scalar(self)!r})"


def is_scalar(x):
    return isinstance(x, (Alg, type(ZERO), int, Fraction))


def scalar(x):
    """Coerce ``x`` (int, Fraction, mpq, Alg or text) to a field scalar."""
    if isinstance(x, Alg):
        return x
    if isinstance(x, str):
        from .textform import parse_scalar
        return parse_scalar(x)
    if isinstance(x, (int, Fraction, type(ZERO))):
        return mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a field scalar")


I = Alg(0, 1)


# ---------------------------------------------------------------------------
# Square roots

def adjoin_sqrt(c, tower=RAT):
    """Square root of ``c`` over ``tower``, extending it if needed.

    Returns ``(tower', root)``.  A rational ``c`` whose negative is a
    rational square moves RAT to GAUSS (Q(sqrt(-q^2)) is Q(i)).  Towers that
    already carry a radicand cannot be extended again.
    """
    c = scalar(c)
    if c == 0:
        raise ValueError("cannot adjoin the square root of zero")
    if tower.extended:
        raise TowerExhausted(f"tower {tower} already carries an adjoined square root")
    t = join_towers(tower, tower_of(c))
    if t.extended:
        raise TowerExhausted(f"{c} does not lie in {tower}")
    pair = _parts(c)[0]
    if not t.gauss:
        r = _qsqrt(pair[0])
        if r is not None:
            return t, r
    root = _gsqrt(pair)
    if root is not None:
        if t.gauss or root[1] == 0:
            return t, _make(root, (ZERO, ZERO), None)
        return GAUSS, _make(root, (ZERO, ZERO), None)
    return Tower(t.gauss, pair), Alg(0, 0, 1, 0, pair)


def field_sqrt(c):
    """Some square root of ``c``, adjoining sqrt(c) to Q(i) if necessary.

    Raises :class:`TowerExhausted` when ``c`` already involves a radical
    and has no square root in its own field.
    """
    c = scalar(c)
    if c == 0:
        return ZERO
    A, B, K = _parts(c)
    if K is None:
        root = _gsqrt(A)
        if root is not None:
            return _make(root, (ZERO, ZERO), None)
        return Alg(0, 0, 1, 0, A)
    # c = A + B sqrt(K) with B != 0; norm must be a square in Q(i)
    norm = _gsub(_gmul(A, A), _gmul(_gmul(B, B), K))
    m = _gsqrt(norm)
    if m is not None:
        for sign in (1, -1):
            half = _gmul(_gadd(A, (sign * m[0], sign * m[1])), (ONE / 2, ZERO))
            x = _gsqrt(half)
            if x is None or (x[0] == 0 and x[1] == 0):
                continue
            y = _gmul(B, _ginv(_gmul((mpq(2), ZERO), x)))
            root = _make(x, y, K)
            if root * root == c:
                return root
    raise TowerExhausted(f"sqrt({format_scalar(c)}) needs a second field extension")


# ---------------------------------------------------------------------------
# Text form

def _fmt_gauss(pair):
    re, im = pair
    if im == 0:
        return str(re)
    sign = "-" if im < 0 else "+"
    return f"{re}{sign}{abs(im)}*i"


def format_scalar(x):
    """Canonical text: ``a/b``, ``a/b+c/d*i`` or ``(..)+(..)*sqrt(K)``."""
    if not isinstance(x, Alg):
        return str(mpq(x))
    if x.K is None:
        return _fmt_gauss((x.a, x.b))
    return f"({_fmt_gauss((x.a, x.b))})+({_fmt_gauss((x.c, x.d))})*sqrt({_fmt_gauss(x.K)})"


# ---------------------------------------------------------------------------
# Polynomials

class Poly:
    """Dense univariate polynomial over the exact scalars.

    ``coeffs[k]`` is the coefficient of s^k.  The zero polynomial has an
    empty tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, cs):
        cs = list(cs)
        while cs and cs[-1] == 0:
            cs.pop()
        p = cls.__new__(cls)
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @classmethod
    def parse(cls, text, var="s"):
        from .textform import parse_poly
        return parse_poly(text, var)

    # -- structure
    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def low(self):
        """Index of the lowest nonzero coefficient (-1 for zero)."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return -1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    # -- arithmetic
    def __add__(self, other):
        if not isinstance(other, Poly):
            if not is_scalar(other):
                return NotImplemented
            other = Poly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly._raw(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            if not is_scalar(other):
                return NotImplemented
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not is_scalar(other):
                return NotImplemented
            return Poly._raw(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = Poly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = 1 / other.lead
        quot = [ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lead
            if c == 0:
                continue
            quot[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - c * b
        return Poly._raw(quot), Poly._raw(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if is_scalar(other):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation; works for any ring element supporting + and *."""
        result = ZERO
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def derivative(self):
        return Poly._raw(k * self.coeffs[k] for k in range(1, len(self.coeffs)))

    def monic(self):
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return Poly._raw(c * inv for c in self.coeffs)

    def shift(self, alpha):
        """The polynomial p(s + alpha)."""
        result = Poly()
        lin = Poly([alpha, 1])
        for c in reversed(self.coeffs):
            result = result * lin + c
        return result

    def reverse(self, k=None):
        """s^k p(1/s); ``k`` defaults to the degree."""
        if k is None:
            k = self.degree
        if k < self.degree:
            raise ValueError("reversal length below degree")
        return Poly._raw(reversed(self.coeffs + (ZERO,) * (k + 1 - len(self.coeffs))))

    def format(self, var="s"):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if isinstance(c, Alg):
                cs = f"({format_scalar(c)})"
                sign = "+"
            else:
                sign = "-" if c < 0 else "+"
                cs = str(abs(c))
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += sign + body
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()!r})"


def poly_gcd(a, b):
    """Monic greatest common divisor (Euclid)."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_check(f):
    """True iff gcd(f, f') is constant."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    return poly_gcd(f, f.derivative()).degree == 0
