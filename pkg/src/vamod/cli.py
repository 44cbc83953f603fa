"""Command-line front end.

Subcommands: classify, build, lift, twist, verify, sweep.  Artifacts are
JSON (see :mod:`vamod.serialize`); errors are printed to stderr as a JSON
object and give exit status 2.  ``verify`` exits 1 when a check fails.
"""

import argparse
import csv
import io
import json
import random
import sys

from .config import DEFAULT_TRUNC
from .errors import VamodError
from .lift import LiftProblem, lift_residual, lift_root, semisimple_root
from .modbuild import DerivationSpec, build_module, classify_cases
from .numeric import Alg, Poly, format_scalar, scalar, squarefree_check
from .serialize import dumps, loads, series_to_json
from .textform import parse_zpoly
from .twist import QuadExt, build_twisted_structure, twist_classify, twist_decide
from .verify import check_twisted, check_untwisted

TOWERS = ("rat", "gauss", "ext")


class UsageError(VamodError):
    pass


def _check_tower(value, tower, what):
    """Reject input scalars outside the allowed base field."""
    coeffs = value.coeffs if isinstance(value, Poly) else [value]
    for c in coeffs:
        if not isinstance(c, Alg):
            continue
        if c.K is not None and (c.c != 0 or c.d != 0) and tower != "ext":
            raise UsageError(f"{what} uses a square root but --tower={tower}")
        if c.b != 0 and tower == "rat":
            raise UsageError(f"{what} is not rational but --tower=rat")
    return value


def _poly(text, tower, what, var="s"):
    return _check_tower(Poly.parse(text, var), tower, what)


def _derivation(args):
    return DerivationSpec(_poly(args.p, args.tower, "p"), _poly(args.q, args.tower, "q"))


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path, kind):
    with open(path, encoding="utf-8") as fh:
        value = loads(fh.read())
    if type(value).__name__ != kind:
        raise UsageError(f"{path} does not contain a {kind}")
    return value


def _json(obj):
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommands

def cmd_classify(args):
    D = _derivation(args)
    rep = classify_cases(D)
    out = {
        "D": str(D),
        "cases": [
            {"case": 1, "admissible": rep.case1,
             "alpha": None if rep.case1_alpha is None else format_scalar(rep.case1_alpha)},
            {"case": 0, "condition": "alpha != 0 and p(alpha)*q(alpha) != 0"},
            {"case": -1, "admissible": rep.case_neg1,
             "alpha": None if rep.case_neg1_alpha is None else format_scalar(rep.case_neg1_alpha)},
        ],
    }
    if args.alpha is not None:
        a = _check_tower(scalar(args.alpha), args.tower, "alpha")
        out["cases"][1].update(alpha=format_scalar(a), admissible=rep.case0(a))
    _emit(_json(out), args.out)
    return 0


def cmd_build(args):
    D = _derivation(args)
    alpha = None if args.alpha is None else _check_tower(scalar(args.alpha), args.tower, "alpha")
    M = build_module(D, args.case, alpha, n=args.n, trunc=args.trunc)
    _emit(dumps(M), args.out)
    return 0


def cmd_lift(args):
    M = _load(args.module, "ModuleData")
    P = parse_zpoly(args.poly)
    for i, Pi in enumerate(P):
        _check_tower(Pi, args.tower, f"coefficient of Z^{i}")
    if args.t0 == "auto":
        T0 = semisimple_root(P, M)
    else:
        T0 = _load(args.t0, "PuiseuxSeries")
    prob = LiftProblem.from_module(P, M, T0)
    prob.check()
    T = lift_root(prob, trunc=args.trunc)
    residual = lift_residual(prob, T)
    if not residual.is_zero():
        raise VamodError("lift residual does not vanish")
    _emit(dumps(T), args.out)
    return 0


def cmd_twist(args):
    M = _load(args.module, "ModuleData")
    ext = QuadExt(_poly(args.f, args.tower, "f"))
    _, witness = twist_classify(ext, M)
    ts = build_twisted_structure(ext, M, trunc=args.trunc)
    _emit(dumps(ts), args.out)
    if args.out:
        sys.stdout.write(_json(witness))
    return 0


def cmd_verify(args):
    reports = []
    if args.module:
        reports.append(("module", check_untwisted(_load(args.module, "ModuleData"))))
    if args.structure:
        reports.append(("structure", check_twisted(_load(args.structure, "TwistedStructure"))))
    if not reports:
        raise UsageError("verify needs --module and/or --structure")
    from .serialize import report_to_json
    out = {name: report_to_json(r) for name, r in reports}
    out["passed"] = all(r.passed for _, r in reports)
    _emit(_json(out), args.report)
    if args.report and not out["passed"]:
        for name, r in reports:
            for c in r.failures():
                sys.stdout.write(_json({"report": name, "failed": c.name,
                                        "witness": series_to_json(c.witness)}))
    return 0 if out["passed"] else 1


def sweep_corpus(seed, count, max_degree=7, bound=3):
    """Seeded square-free f with coefficients in [-bound, bound].

    Draws cycle through three strata so that f(0) = 0 and f(-1) = 0 both
    occur often: unconstrained, constant term zero, constant term chosen
    to make -1 a root.
    """
    rng = random.Random(seed)
    seen = set()
    out = []
    stratum = 0
    while len(out) < count:
        deg = rng.randint(1, max_degree)
        cs = [rng.randint(-bound, bound) for _ in range(deg)] + [rng.choice(
            [c for c in range(-bound, bound + 1) if c])]
        if stratum == 1:
            cs[0] = 0
        elif stratum == 2:
            cs[0] = -sum(c * (-1) ** j for j, c in enumerate(cs) if j)
            if abs(cs[0]) > bound:
                continue
        f = Poly(cs)
        if f.degree < 1 or not squarefree_check(f) or f in seen:
            continue
        seen.add(f)
        out.append(f)
        stratum = (stratum + 1) % 3
    return out


def sweep_modules(n=2, trunc=8):
    """One module per case: d/ds (case 1), d/ds at alpha=-1, s^2 d/ds (case -1)."""
    d = DerivationSpec.parse("1")
    return [
        build_module(d, 1, n=n, trunc=trunc),
        build_module(d, 0, alpha=-1, n=n, trunc=trunc),
        build_module(DerivationSpec.parse("s^2"), -1, n=n, trunc=trunc),
    ]


def run_sweep(seed, count, n=2, trunc=8):
    rows = []
    modules = sweep_modules(n, trunc)
    for f in sweep_corpus(seed, count):
        ext = QuadExt(f)
        for M in modules:
            computed, predicted, _ = twist_decide(ext, M)
            rows.append((M.case, f.format(), predicted, computed, predicted == computed))
    return rows


def cmd_sweep(args):
    rows = run_sweep(args.seed, args.count, n=args.n, trunc=args.trunc)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["case", "f", "predicted", "computed", "agree"])
    for case, f, pred, comp, agree in rows:
        w.writerow([case, f, pred, comp, "true" if agree else "false"])
    _emit(buf.getvalue(), args.out)
    bad = sum(1 for r in rows if not r[4])
    sys.stderr.write(f"{len(rows)} instances, {bad} disagreements\n")
    return 0 if bad == 0 else 1


# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tower", choices=TOWERS, default="ext",
                        help="largest field allowed for input coefficients")
    common.add_argument("--out", help="output file (default: stdout)")

    ap = argparse.ArgumentParser(prog="vamod", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="admissible cases for D = (p/q) d/ds")
    c.add_argument("--p", required=True)
    c.add_argument("--q", default="1")
    c.add_argument("--alpha", help="also test case 0 at this alpha")
    c.set_defaults(func=cmd_classify)

    b = sub.add_parser("build", parents=[common], help="construct a module")
    b.add_argument("--p", required=True)
    b.add_argument("--q", default="1")
    b.add_argument("--case", type=int, choices=(1, 0, -1), required=True)
    b.add_argument("--alpha")
    b.add_argument("--n", type=int, default=1)
    b.add_argument("--trunc", type=int, default=DEFAULT_TRUNC)
    b.set_defaults(func=cmd_build)

    lf = sub.add_parser("lift", parents=[common], help="lift a root of P(Z) over a module")
    lf.add_argument("--module", required=True)
    lf.add_argument("--poly", required=True, help="P(Z) with coefficients in s")
    lf.add_argument("--t0", default="auto", help="'auto' or a JSON series file")
    lf.add_argument("--trunc", type=int)
    lf.set_defaults(func=cmd_lift)

    t = sub.add_parser("twist", parents=[common], help="extend a module to C(s)[t]/(t^2-f)")
    t.add_argument("--module", required=True)
    t.add_argument("--f", required=True)
    t.add_argument("--trunc", type=int)
    t.set_defaults(func=cmd_twist)

    v = sub.add_parser("verify", parents=[common], help="check module axioms")
    v.add_argument("--module")
    v.add_argument("--structure")
    v.add_argument("--report", help="report file (default: stdout)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common], help="twist trichotomy corpus to CSV")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=120)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--trunc", type=int, default=8)
    s.set_defaults(func=cmd_sweep)
    return ap


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (VamodError, ValueError, ZeroDivisionError, OSError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, VamodError):
            err.update(exc.details())
        sys.stderr.write(_json(err))
        return 2


def main():
    sys.exit(run())
