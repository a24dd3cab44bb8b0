from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from circtitch import CycloNumber, Distribution, root_of_unity

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

F = Fraction
HALF = F(1, 2)


@st.composite
def angles(draw, den=48):
    return F(draw(st.integers(0, den - 1)), den)


@st.composite
def cyclos(draw, orders=(1, 2, 3, 4, 8)):
    n = draw(st.sampled_from(orders))
    coeffs = draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5),
                           min_size=1, max_size=n))
    return CycloNumber(coeffs, n)


@st.composite
def distributions(draw, max_points=6, max_order=3, den=48, rational=False):
    terms = draw(st.lists(
        st.tuples(angles(den), st.integers(0, max_order),
                  st.integers(-3, 3) if rational else cyclos()),
        min_size=0, max_size=max_points))
    return Distribution([((x, p), c) for x, p, c in terms])


def zeta(k, n):
    return root_of_unity(k, n)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
