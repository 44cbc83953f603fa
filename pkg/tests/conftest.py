from fractions import Fraction

from gmpy2 import mpq
from hypothesis import HealthCheck, settings, strategies as st

from vamod.numeric import Alg, Poly

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.builds(lambda a, b: mpq(a, b), st.integers(-20, 20), st.integers(1, 9))
nonzero_rationals = rationals.filter(lambda q: q != 0)
gaussians = st.builds(lambda a, b: a + b * Alg(0, 1), rationals, rationals)
# elements of Q(i)(sqrt(2))
extended = st.builds(lambda a, b: a + b * Alg(0, 0, 1, 0, (2, 0)), gaussians, gaussians)
polys = st.lists(small_ints, min_size=0, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def frac(x):
    return Fraction(int(x.numerator), int(x.denominator))


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[k])
