from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from netsynth.admittance import CanonicalAdmittance
from netsynth.ratfunc import Poly, RatFunc

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def fractions(lo=1, hi=20, den=6):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, den))


def nonneg_fractions(hi=20, den=6):
    return st.builds(Fraction, st.integers(0, hi), st.integers(1, den))


@st.composite
def polys(draw, max_degree=3, lo=-9, hi=9):
    n = draw(st.integers(0, max_degree))
    return Poly([Fraction(draw(st.integers(lo, hi)), draw(st.integers(1, 4))) for _ in range(n + 1)])


@st.composite
def ratfuncs(draw, max_degree=3):
    num = draw(polys(max_degree))
    den = draw(polys(max_degree).filter(lambda p: not p.is_zero()))
    return RatFunc(num, den)


@st.composite
def tuples(draw, zero_prob=True):
    """Random class members, optionally with zero coefficients."""
    coeff = nonneg_fractions() if zero_prob else fractions()
    return CanonicalAdmittance(draw(coeff), draw(coeff), draw(coeff), draw(coeff), draw(fractions()))


def ca(*vals) -> CanonicalAdmittance:
    return CanonicalAdmittance(*(Fraction(v) for v in vals))


@pytest.fixture
def fig7a_target():
    return ca(2, 1, 1, 1, 1)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
