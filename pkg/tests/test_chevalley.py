import cmath
import math

import pytest

from moddouble import chevalley
from moddouble.scalar import QScalar, q_number
from moddouble.weyl import WeylElement, commutator


@pytest.fixture(scope="module")
def g():
    return chevalley.embed()


def test_all_relations_exact(g):
    rels = chevalley.relations(g)
    assert len(rels) == 7
    for name, _, residual in rels:
        assert residual.is_zero(), name


def test_stated_prefactor_breaks_ef_relation():
    recs = {r.identity: r for r in chevalley.verify_uq(chevalley.stated_embedding())}
    assert not recs["uq:ef-fe"].passed
    # the q-commutation relations only see the prefactor through K K^-1
    assert recs["uq:Ke"].passed


def test_ef_relation_by_hand(g):
    lhs = g.e * g.f - g.f * g.e
    assert lhs == (g.K - g.Kp).scale(q_number(1).inverse())


def test_casimir_chevalley_form(g):
    cs = chevalley.casimirs(g)
    d = q_number(1)
    assert cs.chevalley_form["ef"] == -(d * d)
    assert cs.chevalley_form["K"] == -QScalar.qpow(-1)
    assert cs.chevalley_form["K'"] == -QScalar.qpow(1)
    assert all(r.passed for r in cs.records)
    assert cs.J == cs.Z1 * cs.Z2


def test_casimir_commutes_with_e_and_f(g):
    cs = chevalley.casimirs(g)
    for x in (g.e, g.f, g.K, g.Kp):
        assert commutator(cs.C, x).is_zero()


def test_stated_casimir_is_not_central(g):
    C, recs = chevalley.stated_casimir(g)
    assert any(not r.passed for r in recs)
    assert all(r.ok for r in recs)          # controls fail as required
    assert not commutator(C, g.e).is_zero()


def test_solve_in_span():
    lat = chevalley.embed().lattice
    w = WeylElement.gens(lat)
    target = w[0].scale(QScalar.qpow(2)) - w[1]
    coeffs = chevalley.solve_in_span(target, [w[0], w[1], w[2]])
    assert coeffs == [QScalar.qpow(2), -QScalar.one(), QScalar.zero()]
    assert chevalley.solve_in_span(w[3], [w[0], w[1]]) is None


@pytest.mark.parametrize("b,value", [(1, 25), (1j, 1), (cmath.exp(1j * math.pi / 4), 13)])
def test_central_charge(b, value):
    assert abs(chevalley.central_charge(b) - value) < 1e-12


def test_central_charge_of_zero():
    with pytest.raises(ValueError):
        chevalley.central_charge(0)


def test_star_cases():
    assert chevalley.star_classify(2.0).central_charge.real >= 25
    unit = chevalley.star_classify(cmath.exp(0.3j))
    assert 1 <= unit.central_charge.real <= 25
    assert chevalley.star_classify(1.5j).central_charge.real <= 1
    assert chevalley.star_classify(0.7 + 0.3j).label == "generic"
    assert chevalley.star_classify(2.0).label == "SLq2R"
    assert chevalley.star_classify(1.5j).label == "SUq2"
    assert unit.label == "factor-interchange"


def test_unit_circle_b():
    b = chevalley.unit_circle_b(0.4)
    assert abs(b * b - cmath.exp(0.4j)) < 1e-15
    assert chevalley.star_classify(b).label == "factor-interchange"
