import cmath
import math

import numpy as np
import pytest
from hypothesis import given

from moddouble import chevalley, matoracle
from moddouble.scalar import PoleError, QScalar
from moddouble.weyl import WeylElement

from conftest import weyl_elements


@pytest.mark.parametrize("N", [2, 3, 5, 8])
def test_clock_shift_relation(N):
    U, V = matoracle.clock_shift(N)
    omega = cmath.exp(2j * math.pi / N)
    assert np.allclose(U @ V, V @ U / omega, atol=1e-14)
    assert np.allclose(np.diag(V), omega ** np.arange(N))


@pytest.mark.parametrize("N,m", [(3, 1), (5, 2), (8, 3), (7, 5)])
def test_relations_hold(N, m):
    rep = matoracle.realize_w(N, z1=0.3 - 1.1j, z2=2.0, m=m)
    res = matoracle.relation_residuals(rep)
    assert max(res.values()) < 1e-12


def test_m_must_be_coprime():
    with pytest.raises(ValueError):
        matoracle.realize_w(6, m=2)
    with pytest.raises(ValueError):
        matoracle.realize_w(4, z1=0)


@given(weyl_elements(matoracle.realize_w(5).lattice), weyl_elements(matoracle.realize_w(5).lattice))
def test_evaluation_homomorphism(a, b):
    rep = matoracle.realize_w(5, z1=0.8 + 0.1j, z2=1.2, m=2)
    lhs = matoracle.evaluate(a * b, rep)
    rhs = matoracle.evaluate(a, rep) @ matoracle.evaluate(b, rep)
    assert np.linalg.norm(lhs - rhs, 2) <= 1e-10 * max(1.0, np.linalg.norm(rhs, 2))


def test_uq_relations_in_matrices():
    g = chevalley.embed()
    rep = matoracle.realize_w(8, z1=0.7, z2=1.3j, m=3)
    for name, _, r in chevalley.relations(g):
        assert np.linalg.norm(matoracle.evaluate(r, rep), 2) < 1e-10, name


def test_casimir_is_scalar():
    g = chevalley.embed()
    cs = chevalley.casimirs(g)
    rep = matoracle.realize_w(5, z1=0.4 + 0.2j, z2=-1.5)
    C = matoracle.evaluate(cs.C, rep)
    assert np.allclose(C, (rep.z1 + rep.z2) * np.eye(5), atol=1e-12)


def test_pole_is_reported_with_monomial():
    lat = matoracle.realize_w(3).lattice
    bad = WeylElement.gen(lat, 1).scale(QScalar.one() / (QScalar.qpow(3) + QScalar.one()))
    with pytest.raises(PoleError, match="w2"):
        matoracle.evaluate(bad, matoracle.realize_w(3))


def test_random_element_is_reproducible():
    lat = matoracle.realize_w(3).lattice
    a = matoracle.random_element(np.random.default_rng(3), lat)
    b = matoracle.random_element(np.random.default_rng(3), lat)
    assert a == b
