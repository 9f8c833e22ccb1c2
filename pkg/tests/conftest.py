import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from moddouble.scalar import GaussRational, QScalar
from moddouble.weyl import Lattice, WeylElement

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


small_ints = st.integers(min_value=-3, max_value=3)
gauss = st.builds(lambda a, b: GaussRational(a, b), small_ints, small_ints)


@st.composite
def laurent_scalars(draw, max_terms=3):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    coeffs = {}
    for _ in range(n):
        coeffs[draw(st.integers(-3, 3))] = complex(draw(small_ints), draw(small_ints))
    return QScalar.laurent(coeffs)


@st.composite
def rational_scalars(draw):
    num = draw(laurent_scalars())
    den = draw(laurent_scalars())
    if den.is_zero():
        den = QScalar.one()
    return num / den


@st.composite
def weyl_elements(draw, lattice, max_terms=3, max_exp=2):
    out = WeylElement.zero(lattice)
    for _ in range(draw(st.integers(0, max_terms))):
        x = tuple(draw(st.integers(-max_exp, max_exp)) for _ in range(lattice.n))
        out = out + WeylElement.monomial(lattice, x, draw(laurent_scalars(max_terms=2)))
    return out


@pytest.fixture(scope="session")
def cyclic():
    return Lattice.cyclic()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
