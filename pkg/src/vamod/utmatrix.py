"""Upper-triangular matrices over the exact scalars.

A :class:`UTMatrix` stores all n*n entries (zeros below the diagonal) as a
tuple of rows.  The k-th superdiagonal part X^(k) keeps only the entries
(i, i+k); these parts grade the algebra: X^(k) * Y^(l) lives on the
(k+l)-th superdiagonal.

Scalars act as multiples of the identity, so ``M + 2`` means M + 2*I and
``M == 0`` tests for the zero matrix.
"""

from .config import MAX_DIM
from .errors import SingularMatrix
from .numeric import ONE, ZERO, is_scalar, scalar


class UTMatrix:
    __slots__ = ("n", "rows")

    def __init__(self, rows, check=True):
        rows = tuple(tuple(scalar(c) for c in row) for row in rows) if check else rows
        n = len(rows)
        if check:
            if n < 1:
                raise ValueError("empty matrix")
            if n > MAX_DIM:
                raise ValueError(f"dimension {n} exceeds the configured maximum {MAX_DIM}")
            for i, row in enumerate(rows):
                if len(row) != n:
                    raise ValueError("matrix must be square")
                for j in range(i):
                    if row[j] != 0:
                        raise ValueError(f"entry ({i},{j}) below the diagonal is nonzero")
        self.n = n
        self.rows = rows

    # -- constructors
    @classmethod
    def zero(cls, n):
        return cls(tuple((ZERO,) * n for _ in range(n)), check=False)

    @classmethod
    def identity(cls, n):
        return cls.diag([ONE] * n)

    @classmethod
    def diag(cls, values):
        n = len(values)
        vals = [scalar(v) for v in values]
        return cls(tuple(tuple(vals[i] if i == j else ZERO for j in range(n))
                         for i in range(n)), check=False)

    @classmethod
    def scalar_matrix(cls, c, n):
        return cls.diag([c] * n)

    @classmethod
    def elementary(cls, i, j, n):
        """E_ij with zero-based indices (i <= j)."""
        if not 0 <= i <= j < n:
            raise ValueError("elementary matrix must be upper triangular")
        return cls(tuple(tuple(ONE if (r, c) == (i, j) else ZERO for c in range(n))
                         for r in range(n)), check=False)

    @classmethod
    def jordan(cls, n):
        """Nilpotent Jordan block J_n (ones on the first superdiagonal)."""
        return cls(tuple(tuple(ONE if c == r + 1 else ZERO for c in range(n))
                         for r in range(n)), check=False)

    @classmethod
    def toeplitz(cls, diagonals, n):
        """Upper-triangular Toeplitz matrix sum_k diagonals[k] * J_n^k."""
        d = [scalar(v) for v in diagonals] + [ZERO] * n
        return cls(tuple(tuple(d[c - r] if c >= r else ZERO for c in range(n))
                         for r in range(n)), check=False)

    # -- access
    def __getitem__(self, ij):
        if isinstance(ij, tuple):
            i, j = ij
            return self.rows[i][j]
        return self.rows[ij]

    def diagonal(self):
        return [self.rows[i][i] for i in range(self.n)]

    def superdiagonal(self, k):
        return [self.rows[i][i + k] for i in range(self.n - k)]

    def superdiag_part(self, k):
        if not 0 <= k < self.n:
            raise IndexError(f"superdiagonal {k} out of range for n={self.n}")
        n = self.n
        return UTMatrix(tuple(tuple(self.rows[r][c] if c == r + k else ZERO for c in range(n))
                              for r in range(n)), check=False)

    def diagonal_part(self):
        return self.superdiag_part(0)

    def is_zero(self):
        return all(c == 0 for row in self.rows for c in row)

    def is_diagonal(self):
        n = self.n
        return all(self.rows[i][j] == 0 for i in range(n) for j in range(i + 1, n))

    def is_scalar_matrix(self):
        d = self.rows[0][0]
        return self.is_diagonal() and all(c == d for c in self.diagonal())

    # -- arithmetic
    def _lift(self, other):
        if isinstance(other, UTMatrix):
            if other.n != self.n:
                raise ValueError(f"dimension mismatch {self.n} vs {other.n}")
            return other
        if is_scalar(other):
            return UTMatrix.scalar_matrix(other, self.n)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return UTMatrix(tuple(tuple(a + b for a, b in zip(ra, rb))
                              for ra, rb in zip(self.rows, o.rows)), check=False)

    __radd__ = __add__

    def __neg__(self):
        return UTMatrix(tuple(tuple(-a for a in r) for r in self.rows), check=False)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return UTMatrix(tuple(tuple(a - b for a, b in zip(ra, rb))
                              for ra, rb in zip(self.rows, o.rows)), check=False)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if not isinstance(other, UTMatrix):
            if is_scalar(other):
                return UTMatrix(tuple(tuple(a * other for a in r) for r in self.rows), check=False)
            return NotImplemented
        n = self.n
        if other.n != n:
            raise ValueError(f"dimension mismatch {n} vs {other.n}")
        B = other.rows
        out = []
        for i, arow in enumerate(self.rows):
            acc = [ZERO] * n
            for k in range(i, n):
                a = arow[k]
                if a == 0:
                    continue
                brow = B[k]
                for j in range(k, n):
                    b = brow[j]
                    if b != 0:
                        acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return UTMatrix(tuple(out), check=False)

    def __rmul__(self, other):
        if is_scalar(other):
            return UTMatrix(tuple(tuple(other * a for a in r) for r in self.rows), check=False)
        return NotImplemented

    def __truediv__(self, other):
        if is_scalar(other):
            inv = 1 / scalar(other)
            return self * inv
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            return ut_inverse(self) ** (-k)
        result = UTMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def commutator(self, other):
        return self * other - other * self

    def __eq__(self, other):
        if isinstance(other, UTMatrix):
            return self.n == other.n and self.rows == other.rows
        if is_scalar(other):
            c = scalar(other)
            n = self.n
            return all(self.rows[i][j] == (c if i == j else 0)
                       for i in range(n) for j in range(i, n))
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(c) for c in r) for r in self.rows)
        return f"UTMatrix([{body}])"

    __str__ = __repr__


def superdiag_part(X, k):
    return X.superdiag_part(k)


def ut_inverse(X):
    """Exact inverse by back substitution; every diagonal entry must be nonzero."""
    n = X.n
    R = X.rows
    for i in range(n):
        if R[i][i] == 0:
            raise SingularMatrix(f"diagonal entry {i} is zero")
    inv_diag = [1 / R[i][i] for i in range(n)]
    Y = [[ZERO] * n for _ in range(n)]
    for j in range(n):
        Y[j][j] = inv_diag[j]
        for i in range(j - 1, -1, -1):
            acc = ZERO
            for k in range(i + 1, j + 1):
                if R[i][k] != 0 and Y[k][j] != 0:
                    acc = acc + R[i][k] * Y[k][j]
            Y[i][j] = -acc * inv_diag[i]
    return UTMatrix(tuple(tuple(r) for r in Y), check=False)


def toeplitz_check(X):
    """True iff every superdiagonal of X is constant."""
    for k in range(X.n):
        vals = X.superdiagonal(k)
        if any(v != vals[0] for v in vals[1:]):
            return False
    return True
