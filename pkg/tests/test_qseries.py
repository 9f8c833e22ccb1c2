import cmath

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from moddouble import qseries
from moddouble.qseries import FORMS, NonNilpotentArgument, sq, sq_coefficients
from moddouble.weyl import Lattice, WeylElement


@pytest.mark.parametrize("a,b", [("product", "sum"), ("sum", "explog")])
def test_coefficient_forms_agree(a, b):
    assert sq_coefficients(8, a) == sq_coefficients(8, b)


@pytest.mark.parametrize("M", [2, 4, 6])
def test_qadic_finite_product(M):
    # |q| < 1 expansion: s_q(w) = prod_n (1 + q^(2n+1) w); truncating the
    # product at M factors only changes terms of q-order >= 2M + 1
    c = sq_coefficients(6)
    p = qseries.finite_product_coefficients(M, 6)
    for k in range(7):
        d = c[k] - p[k]
        assert d.is_zero() or d.val >= 2 * M + 1


@given(st.floats(0.05, 0.6), st.floats(-3.1, 3.1), st.complex_numbers(max_magnitude=1.5))
def test_numeric_product_oracle(r, theta, w):
    q = r * cmath.exp(1j * theta)
    series = sum(x.evaluate(q) * w ** k for k, x in enumerate(sq_coefficients(40)))
    n = np.arange(200)
    prod = np.prod(1 + q ** (2 * n + 1) * w)
    assert abs(series - prod) <= 1e-10 * max(1.0, abs(prod))


def test_linear_coefficient():
    # for |q| < 1, sum_n q^(2n+1) = q / (1 - q^2) = -1 / (q - 1/q)
    from moddouble.scalar import q_number
    assert sq_coefficients(1, "explog")[1] == -q_number(1).inverse()


def test_unknown_form():
    with pytest.raises(ValueError):
        sq_coefficients(3, "bogus")


@pytest.mark.parametrize("form", FORMS)
def test_truncation_consistency(form):
    u, v = WeylElement.gens(Lattice.weyl_pair())
    g = (1, 1)
    big = sq(u + v, 6, form, g)
    for M in range(1, 6):
        assert big.truncate(M) == sq(u + v, M, form, g)


def test_non_nilpotent_argument():
    lat = Lattice.weyl_pair()
    u, v = WeylElement.gens(lat)
    with pytest.raises(NonNilpotentArgument):
        sq(u + WeylElement.one(lat), 4)
    with pytest.raises(NonNilpotentArgument):
        sq(u * v.inverse(), 4)


def test_truncated_series_mul_respects_bounds():
    lat = Lattice.weyl_pair()
    u, v = WeylElement.gens(lat)
    a, b = sq(u, 5), sq(v, 3)
    assert (a * b).bound == 3
    with pytest.raises(ValueError):
        b.truncate(4)


@pytest.mark.parametrize("N", [2, 4, 6])
def test_schutzenberger(N):
    rep = qseries.check_schutzenberger(N)
    main, control = rep.records
    assert main.passed and main.residual == "0"
    assert not control.passed and control.ok


def test_schutzenberger_requires_ordering():
    # with the factors swapped the identity fails: it needs uv = q^2 vu in this order
    lat = Lattice.weyl_pair()
    u, v = WeylElement.gens(lat)
    assert not ((sq(v, 4) * sq(u, 4)) - sq(u + v, 4)).is_zero()


def test_pentagon():
    rep = qseries.check_pentagon(6)
    assert rep.ok
    assert [r.passed for r in rep.records if r.expect == "zero"] == [True, True]
    ctl = [r for r in rep.records if r.expect == "nonzero"]
    assert ctl and all(not r.passed for r in ctl)


def test_forms_report():
    rep = qseries.check_forms(8)
    assert rep.ok and len(rep.records) == 3
