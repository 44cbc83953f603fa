"""Parsing of scalar and polynomial text forms.

A small recursive-descent parser over the grammar::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := ('+' | '-') unary | power
    power := atom (('^' | '**') INT)?
    atom  := INT | 'i' | VAR | 'sqrt' '(' expr ')' | '(' expr ')'

Values are sparse polynomials ``{(deg_s, deg_Z): scalar}``.  Division is
only allowed by nonzero constants and ``sqrt`` only of constants.
"""

import re

from gmpy2 import mpq

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")
VARIABLES = ("s", "Z")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


def _padd(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + v if sign > 0 else out.get(k, 0) - v
        if w == 0:
            out.pop(k, None)
        else:
            out[k] = w
    return out


def _pmul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = (ka[0] + kb[0], ka[1] + kb[1])
            w = out.get(k, 0) + va * vb
            if w == 0:
                out.pop(k, None)
            else:
                out[k] = w
    return out


def _const_of(p, what):
    if any(k != (0, 0) for k in p):
        raise ParseError(f"{what} must be a constant")
    return p.get((0, 0), mpq(0))


class _Parser:
    def __init__(self, text, allowed):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.allowed = allowed

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"expected {value or kind} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            v = _padd(v, self.term(), 1 if op == "+" else -1)
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                v = _pmul(v, rhs)
            else:
                c = _const_of(rhs, "divisor")
                if c == 0:
                    raise ParseError("division by zero")
                inv = 1 / c
                v = {k: w * inv for k, w in v.items()}
        return v

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return {k: -w for k, w in self.unary().items()}
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() in (("op", "^"), ("op", "**")):
            self.take()
            k = self.take("num")[1]
            out = {(0, 0): mpq(1)}
            for _ in range(k):
                out = _pmul(out, base)
            return out
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return {(0, 0): mpq(val)} if val else {}
        if kind == "op" and val == "(":
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        if kind == "name":
            self.take()
            if val == "i":
                from .numeric import I
                return {(0, 0): I}
            if val == "sqrt":
                from .numeric import field_sqrt
                self.take("op", "(")
                c = _const_of(self.expr(), "sqrt argument")
                self.take("op", ")")
                r = field_sqrt(c)
                return {(0, 0): r} if r != 0 else {}
            if val in self.allowed:
                return {(1, 0) if val == "s" else (0, 1): mpq(1)}
            if val in VARIABLES:
                raise ParseError(f"variable {val!r} not allowed here (allowed: {self.allowed})")
            raise ParseError(f"unknown symbol {val!r}")
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_expr(text, allowed=("s",)):
    return _Parser(text, allowed).parse()


def parse_scalar(text):
    return _const_of(parse_expr(text, allowed=()), "scalar")


def parse_poly(text, var="s"):
    """Parse a univariate polynomial in ``var`` ('s' or 'Z')."""
    from .numeric import Poly

    if var not in VARIABLES:
        raise ParseError(f"unsupported variable {var!r}")
    terms = parse_expr(text, allowed=(var,))
    idx = 0 if var == "s" else 1
    deg = max((k[idx] for k in terms), default=-1)
    coeffs = [0] * (deg + 1)
    for k, v in terms.items():
        coeffs[k[idx]] = v
    return Poly(coeffs)


def parse_zpoly(text):
    """Parse P(Z) with coefficients in s; returns [P_0(s), ..., P_N(s)]."""
    from .numeric import Poly

    terms = parse_expr(text, allowed=("s", "Z"))
    nz = max((k[1] for k in terms), default=0)
    ns = max((k[0] for k in terms), default=0)
    grid = [[0] * (ns + 1) for _ in range(nz + 1)]
    for (ds, dz), v in terms.items():
        grid[dz][ds] = v
    return [Poly(row) for row in grid]
