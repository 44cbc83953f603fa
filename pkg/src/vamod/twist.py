"""Quadratic extensions K = C(s)[t]/(t^2 - f(s)) over a module.

A module M over (C(s), D) extends to K by choosing Y(t, x) = T(x), a
matrix-series square root of f(S(x)).  Whether T needs half-integer
exponents (the sigma-twisted case, sigma: t -> -t) is decided by the
parity of the valuation of f(S^[0](x)), and agrees with a closed-form
test depending only on the case of M:

* case 1:  twisted iff f(0) = 0
* case 0:  twisted iff f(alpha) = 0
* case -1: twisted iff deg f is odd
"""

from dataclasses import dataclass, replace

from .errors import PrecisionExhausted, PredicateMismatch
from .lift import LiftProblem, lift_root
from .modbuild import ModuleData
from .numeric import Poly, squarefree_check
from .series import PuiseuxSeries, poly_at_series, series_sqrt
from .utmatrix import UTMatrix

ID = "id"
SIGMA = "sigma"

_PREDICATES = {1: "f0_zero", 0: "f_alpha_zero", -1: "deg_f_odd"}


@dataclass(frozen=True)
class QuadExt:
    f: Poly

    def __post_init__(self):
        if self.f.degree < 1:
            raise ValueError("f must have degree at least 1")
        if not squarefree_check(self.f):
            raise ValueError(f"f={self.f} is not square-free")

    @classmethod
    def parse(cls, text):
        return cls(Poly.parse(text))

    @property
    def degree_relaxed(self):
        """True when deg f < 3, outside the hyperelliptic range."""
        return self.f.degree < 3


@dataclass(frozen=True)
class TwistedStructure:
    base: ModuleData
    ext: QuadExt
    g: str
    ram: int
    T: PuiseuxSeries


def _predicate(ext, M):
    f = ext.f
    if M.case == 1:
        return f(0) == 0
    if M.case == 0:
        return f(M.alpha) == 0
    return f.degree % 2 == 1


def twist_decide(ext, M):
    """``(computed, predicted, witness)`` without asserting agreement.

    ``computed`` comes from the valuation parity of f(S^[0]); ``predicted``
    from the closed-form test for the case of M.
    """
    F = poly_at_series(ext.f, M.semisimple)
    if F.is_zero():
        raise PrecisionExhausted("f(S^[0]) vanishes to the known precision",
                                 available=F.precision)
    v = F.ld
    twisted = v.denominator != 1 or v.numerator % 2 != 0
    g = SIGMA if twisted else ID
    predicted = SIGMA if _predicate(ext, M) else ID
    witness = {
        "g": g,
        "valuation": int(v) if v.denominator == 1 else str(v),
        "predicate": _PREDICATES[M.case],
        "degree_relaxed": ext.degree_relaxed,
    }
    return g, predicted, witness


def twist_classify(ext, M):
    """Return ``(g, witness)`` for the extension of M to ``ext``.

    The witness dict records the valuation of f(S^[0]), the closed-form
    predicate consulted and whether deg f < 3.  Raises
    :class:`PredicateMismatch` if the two tests disagree.
    """
    g, predicted, witness = twist_decide(ext, M)
    if predicted != g:
        raise PredicateMismatch(f"valuation test says {g} but predicate "
                                f"{witness['predicate']} says {predicted}")
    return g, witness


def build_twisted_structure(ext, M, trunc=None):
    """Lift M to K by solving T^2 = f(S) with diagonal sqrt(f(S^[0]))."""
    g, _ = twist_classify(ext, M)
    n = M.n
    T0, ramified = series_sqrt(poly_at_series(ext.f, M.semisimple))
    Phat = (
        -poly_at_series(ext.f, M.S),
        PuiseuxSeries.zero(),
        PuiseuxSeries.constant(UTMatrix.identity(n)),
    )
    T = lift_root(LiftProblem(Phat, T0, n), trunc=trunc)
    return TwistedStructure(base=M, ext=ext, g=g, ram=2 if ramified else 1, T=T)


def galois_conjugate(ts):
    """The structure composed with sigma: Y(t, x) -> -Y(t, x)."""
    return replace(ts, T=-ts.T)


def structures_equivalent(a, b):
    """'equal', 'conjugate' or 'distinct' for structures over one base."""
    if a.T.agrees(b.T):
        return "equal"
    if a.T.agrees(-b.T):
        return "conjugate"
    return "distinct"


def reduce_element(num, den, tdeg, f):
    """Normal form (num', den, e) of num/den * t^tdeg with e in {0, 1}.

    Uses t^2 = f; negative powers of t are cleared into the denominator.
    """
    if tdeg >= 0:
        return num * f ** (tdeg // 2), den, tdeg % 2
    k = -tdeg
    # t^-k = t^(k mod 2) / f^((k + 1) // 2)
    return num, den * f ** ((k + 1) // 2), k % 2


def eval_element(ts, num, den, tdeg):
    """Y(num/den * t^tdeg, x) on the twisted structure."""
    num, den, e = reduce_element(num, den, tdeg, ts.ext.f)
    Y = ts.base.eval(num, den)
    return Y * ts.T if e else Y
