"""Lossless JSON encoding of scalars, polynomials, matrices and series.

Rationals are strings ``"p/q"``; other scalars are objects with Gaussian
pairs ``re``, ``rad`` and radicand ``K``.  Matrices are ``{"n", "rows"}``,
polynomials ``{"poly": [...]}`` (lowest degree first).
"""

import json
from fractions import Fraction

from gmpy2 import mpq

from .modbuild import DerivationSpec, ModuleData
from .numeric import Alg, Poly
from .series import PuiseuxSeries
from .twist import QuadExt, TwistedStructure
from .utmatrix import UTMatrix
from .verify import Check, VerifyReport


def _q(x):
    return str(mpq(x))


def scalar_to_json(x):
    if isinstance(x, Alg):
        return {"re": [_q(x.a), _q(x.b)], "rad": [_q(x.c), _q(x.d)],
                "K": None if x.K is None else [_q(x.K[0]), _q(x.K[1])]}
    return _q(x)


def scalar_from_json(obj):
    if isinstance(obj, str):
        return mpq(obj)
    if isinstance(obj, int):
        return mpq(obj)
    re, rad, K = obj["re"], obj["rad"], obj.get("K")
    a, b = mpq(re[0]), mpq(re[1])
    c, d = mpq(rad[0]), mpq(rad[1])
    if K is None or (c == 0 and d == 0):
        if b == 0:
            return a
        return Alg(a, b)
    return Alg(a, b, c, d, (mpq(K[0]), mpq(K[1])))


def poly_to_json(p):
    return [scalar_to_json(c) for c in p.coeffs]


def poly_from_json(obj):
    return Poly([scalar_from_json(c) for c in obj])


def matrix_to_json(m):
    return {"n": m.n, "rows": [[scalar_to_json(c) for c in row] for row in m.rows]}


def matrix_from_json(obj):
    m = UTMatrix([[scalar_from_json(c) for c in row] for row in obj["rows"]])
    if m.n != obj["n"]:
        raise ValueError("matrix size does not match its rows")
    return m


def _coeff_to_json(c):
    if isinstance(c, UTMatrix):
        return matrix_to_json(c)
    if isinstance(c, Poly):
        return {"poly": poly_to_json(c)}
    return scalar_to_json(c)


def _coeff_from_json(obj):
    if isinstance(obj, dict):
        if "rows" in obj:
            return matrix_from_json(obj)
        if "poly" in obj:
            return poly_from_json(obj["poly"])
    return scalar_from_json(obj)


def series_to_json(A):
    return {"ram": A.ram, "lo": A.lo, "trunc": A.trunc,
            "coeffs": [_coeff_to_json(c) for c in A.coeffs]}


def series_from_json(obj):
    return PuiseuxSeries([_coeff_from_json(c) for c in obj["coeffs"]],
                         lo=obj["lo"], ram=obj["ram"], trunc=obj["trunc"])


def module_to_json(M):
    return {"type": "module", "n": M.n, "p": poly_to_json(M.D.p), "q": poly_to_json(M.D.q),
            "case": M.case, "alpha": scalar_to_json(M.alpha), "S": series_to_json(M.S)}


def module_from_json(obj):
    D = DerivationSpec(poly_from_json(obj["p"]), poly_from_json(obj["q"]))
    S = series_from_json(obj["S"])
    if S.dim not in (None, obj["n"]):
        raise ValueError("series coefficients do not match the module dimension")
    return ModuleData(n=obj["n"], D=D, case=obj["case"],
                      alpha=scalar_from_json(obj["alpha"]), S=S)


def structure_to_json(ts):
    return {"type": "twisted", "base": module_to_json(ts.base), "f": poly_to_json(ts.ext.f),
            "g": ts.g, "ram": ts.ram, "T": series_to_json(ts.T)}


def structure_from_json(obj):
    return TwistedStructure(base=module_from_json(obj["base"]),
                            ext=QuadExt(poly_from_json(obj["f"])),
                            g=obj["g"], ram=obj["ram"], T=series_from_json(obj["T"]))


def report_to_json(r):
    return {
        "type": "report",
        "header": r.header,
        "passed": r.passed,
        "precision_used": None if r.precision_used is None else str(r.precision_used),
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail,
                    "witness": None if c.witness is None else series_to_json(c.witness)}
                   for c in r.checks],
    }


def report_from_json(obj):
    checks = [Check(c["name"], c["passed"],
                    None if c["witness"] is None else series_from_json(c["witness"]),
                    c.get("detail", ""))
              for c in obj["checks"]]
    prec = obj["precision_used"]
    return VerifyReport(checks, None if prec is None else Fraction(prec), obj["header"])


_ENCODERS = (
    (ModuleData, module_to_json),
    (TwistedStructure, structure_to_json),
    (VerifyReport, report_to_json),
    (PuiseuxSeries, series_to_json),
    (UTMatrix, matrix_to_json),
    (Poly, lambda p: {"poly": poly_to_json(p)}),
)


def to_json(value):
    for cls, enc in _ENCODERS:
        if isinstance(value, cls):
            return enc(value)
    return scalar_to_json(value)


def dumps(value):
    """Deterministic text form (sorted keys, trailing newline)."""
    return json.dumps(to_json(value), indent=1, sort_keys=True) + "\n"


def loads(text):
    obj = json.loads(text)
    kind = obj.get("type") if isinstance(obj, dict) else None
    if kind == "module":
        return module_from_json(obj)
    if kind == "twisted":
        return structure_from_json(obj)
    if kind == "report":
        return report_from_json(obj)
    if isinstance(obj, dict) and "coeffs" in obj:
        return series_from_json(obj)
    return _coeff_from_json(obj)
